#pragma once

#include <initializer_list>
#include <vector>

#include "hvc/variational.hpp"

namespace hvc::test {

inline MultiIndex mi(std::initializer_list<int> e) { return MultiIndex::from_entries(std::vector<int>(e)); }
inline Scalar c(unsigned field, std::initializer_list<int> entries = {}) { return Scalar::coord(u(field, entries)); }
inline Form du(unsigned field, std::initializer_list<int> entries = {}) { return Form::covector(u(field, entries)); }
// D^{ab} = u^a_1 u^b_2 - u^a_2 u^b_1
inline Scalar D(unsigned a, unsigned b) { return c(a, {1}) * c(b, {2}) - c(a, {2}) * c(b, {1}); }
inline bool same(const Form& a, const Form& b) { return (a - b).is_zero(); }
inline bool same(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }

}  // namespace hvc::test
