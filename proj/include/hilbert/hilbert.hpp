#ifndef HILBERT_HILBERT_HPP
#define HILBERT_HILBERT_HPP

#include "hilbert/error.hpp"
#include "hilbert/rational.hpp"
#include "hilbert/matrix.hpp"
#include "hilbert/surface_algebra.hpp"
#include "hilbert/fock.hpp"
#include "hilbert/operator.hpp"
#include "hilbert/heisenberg.hpp"
#include "hilbert/parallel.hpp"
#include "hilbert/relations.hpp"
#include "hilbert/generators.hpp"
#include "hilbert/class_algebra.hpp"

#endif  // HILBERT_HILBERT_HPP
