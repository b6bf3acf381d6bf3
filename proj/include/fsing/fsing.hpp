#ifndef FSING_FSING_HPP
#define FSING_FSING_HPP

#include "fsing/arith.hpp"
#include "fsing/bfmod.hpp"
#include "fsing/bsato.hpp"
#include "fsing/frobenius.hpp"
#include "fsing/ideals.hpp"
#include "fsing/monomial_order.hpp"
#include "fsing/poly.hpp"
#include "fsing/report.hpp"
#include "fsing/singular.hpp"

#endif  // FSING_FSING_HPP
