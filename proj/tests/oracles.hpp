#pragma once

// Independent reference computations used by the unit tests and the acceptance driver.
// They deliberately avoid the library's algorithms and work from definitions.

#include "gentle/category.hpp"
#include "gentle/hochschild.hpp"
#include "gentle/lie.hpp"
#include "gentle/quiver.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace oracle {

// Pairwise scan of the gentle conditions: degree bounds, composable relations, at most one
// relation and one non-relation continuation on each side of every arrow, connectivity.
bool is_gentle(const gentle::GradedQuiver& q, const std::vector<std::pair<int, int>>& relations);

// Rank of a dense rational matrix.
int rank(std::vector<std::vector<mpq_class>> rows, int cols);

// Composite of two basis elements by concatenating arrow words and scanning for a relation;
// -1 when the composite is zero or undefined.
int compose_paths(const gentle::BasisCategory& cat, int a, int b);

// dim Der(A) - dim Inn(A) for an algebra concentrated in degree 0, from the Leibniz rule
// written out on the path basis.
int outer_derivations(const gentle::BasisCategory& cat);

// Brace operation evaluated on every composable chain of non-identity elements, straight
// from the definition (Koszul sign from the shifted degrees of the inputs passed over).
gentle::Cochain brace(const gentle::Cochain& f, const std::vector<const gentle::Cochain*>& args, int cap);

// exp of the derivation sum_i c_i (-x^{i+1} d/dx), as the series sum_k D^k(x) / k! truncated
// after x^{order+1}. Coefficient k of the result is returned at index k.
std::vector<mpq_class> exp_witt(const gentle::TruncatedWitt& u);

// Composition of truncated series a(b(x)), both given by coefficients of x^1 .. x^{order+1}.
std::vector<mpq_class> compose(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b);

// Random cochain of the given degree supported on chains of arity lo..hi.
gentle::Cochain random_cochain(const gentle::BasisCategory& cat, int degree, int lo, int hi, unsigned seed,
                               int cap);

}  // namespace oracle
