#pragma once

#include "rational.hpp"
#include "cyclotomic.hpp"
#include "scalar.hpp"
#include "matrix.hpp"
#include "mat2.hpp"
#include "cosets.hpp"
#include "poly.hpp"
#include "polyspace.hpp"
#include "hecke.hpp"
#include "analytic.hpp"
#include "gamma02.hpp"
#include "io.hpp"
