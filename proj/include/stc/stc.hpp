#pragma once

#include "stc/baselines.hpp"
#include "stc/community.hpp"
#include "stc/connectivity.hpp"
#include "stc/core.hpp"
#include "stc/eval.hpp"
#include "stc/graph.hpp"
#include "stc/greedy.hpp"
#include "stc/karate.hpp"
#include "stc/labeling.hpp"
#include "stc/oracle.hpp"
#include "stc/reduction.hpp"
#include "stc/sampling.hpp"
#include "stc/wedges.hpp"
