#pragma once

#include "area.hpp"
#include "complex.hpp"
#include "contour.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "finite_difference.hpp"
#include "jet.hpp"
#include "quadrature.hpp"
#include "render.hpp"
#include "report.hpp"
#include "theorems.hpp"
