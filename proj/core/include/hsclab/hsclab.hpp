#pragma once

#include "hsclab/curvature.hpp"
#include "hsclab/error.hpp"
#include "hsclab/expr.hpp"
#include "hsclab/jet.hpp"
#include "hsclab/lemma.hpp"
#include "hsclab/metric.hpp"
#include "hsclab/positivity.hpp"
#include "hsclab/random.hpp"
#include "hsclab/types.hpp"
#include "hsclab/version.hpp"
#include "hsclab/warp.hpp"
