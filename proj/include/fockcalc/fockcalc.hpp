#pragma once

#include "fockcalc/scalar.hpp"
#include "fockcalc/multi_index.hpp"
#include "fockcalc/ncpoly.hpp"
#include "fockcalc/exterior.hpp"
#include "fockcalc/kernel.hpp"
#include "fockcalc/wick.hpp"
#include "fockcalc/table.hpp"
#include "fockcalc/operator_expr.hpp"
#include "fockcalc/jets.hpp"
#include "fockcalc/l_kernels.hpp"
#include "fockcalc/expansion.hpp"
#include "fockcalc/numeric.hpp"
#include "fockcalc/toeplitz.hpp"
#include "fockcalc/json_io.hpp"
#include "fockcalc/random_gen.hpp"
#include "fockcalc/acceptance.hpp"
