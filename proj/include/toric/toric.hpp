#pragma once

#include "toric/errors.hpp"
#include "toric/lattice.hpp"
#include "toric/polyhedral.hpp"
#include "toric/cone.hpp"
#include "toric/hilbert_basis.hpp"
#include "toric/monomial_ideal.hpp"
#include "toric/invariants.hpp"
#include "toric/families.hpp"
#include "toric/report.hpp"
