#pragma once

#include "hypermatch/core.hpp"
#include "hypermatch/io.hpp"
#include "hypermatch/stack_matcher.hpp"
#include "hypermatch/swap_matcher.hpp"
#include "hypermatch/baselines.hpp"
#include "hypermatch/oracle.hpp"
