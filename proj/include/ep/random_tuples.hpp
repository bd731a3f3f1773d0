#pragma once
#include <random>

#include "ep/tuple.hpp"

namespace ep {

enum class RandomGroup { Trivial, Z2, Z6, Z, Any };

// Random valid tuple: small graph, trivial vertex action, t cyclically
// shifting each parallel edge class. For Z/m the class sizes divide m, the
// phi exponents sum to 0 mod the orbit size along each orbit, and the twist
// product over each orbit is an (m/d)-th root of unity, so the order-closure
// and cocycle laws hold by construction.
EPTuple random_tuple(FieldSpec f, RandomGroup g, std::mt19937_64& rng,
                     int max_vertices = 5, int max_edges = 8);

// Random nonzero scalar.
Scalar random_unit(FieldSpec f, std::mt19937_64& rng);

}  // namespace ep
