#pragma once

#include "algebra.hpp"
#include "chen.hpp"
#include "exact_solve.hpp"
#include "groupoid.hpp"
#include "io/document.hpp"
#include "io/dot.hpp"
#include "io/expression.hpp"
#include "io/report.hpp"
#include "scalar.hpp"
#include "skew_smash.hpp"
#include "structure.hpp"
#include "ultragraph.hpp"
#include "ultrapath.hpp"
