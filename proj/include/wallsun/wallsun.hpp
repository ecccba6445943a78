#pragma once

#include "wallsun/abc_triples.hpp"
#include "wallsun/arith.hpp"
#include "wallsun/errors.hpp"
#include "wallsun/factor.hpp"
#include "wallsun/fibonacci.hpp"
#include "wallsun/golden_ring.hpp"
#include "wallsun/heuristics.hpp"
#include "wallsun/periods.hpp"
#include "wallsun/scan.hpp"
#include "wallsun/sieve.hpp"
#include "wallsun/verify.hpp"
#include "wallsun/wieferich.hpp"
