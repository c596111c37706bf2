#pragma once

// Decision toolkit for automorphism actions of Z^r on tori: exact decision
// procedures for the existence of nonaffine equivariant continuous maps,
// explicit witness construction and numerical re-verification.

#include "rigidity/action.hpp"
#include "rigidity/cyclotomic.hpp"
#include "rigidity/decide.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/io.hpp"
#include "rigidity/lattice.hpp"
#include "rigidity/matrix.hpp"
#include "rigidity/polynomial.hpp"
#include "rigidity/subspace.hpp"
#include "rigidity/verify.hpp"
#include "rigidity/witness.hpp"
