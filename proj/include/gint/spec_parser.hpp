#pragma once
#include <string>
#include <vector>

#include "gint/group.hpp"

namespace gint {

// Abstract syntax for group-spec words:
//   spec := term ("x" term)*
//   term := atom | ctor "(" args ")"      ctor := C | E | D | Dic
//   args := integer | spec                (integer for C/E/D, spec for Dic)
// Named atoms: Q8, H2, H16, H27, H32, A4, Q8sZ3, Z4sZ4, E9sZ2, D6xZ3, Dic12.
// D(n) is the dihedral group OF ORDER n, matching D6/D8/D12 usage here —
// not the 2n-element D_n of the rival convention.
struct GroupSpec {
    enum class Kind { cyclic, elementary, dihedral, dicyclic, named, product };
    Kind kind = Kind::named;
    long long number = 0;             // the C/E/D argument
    std::string name;                 // named atoms only
    std::vector<GroupSpec> children;  // product factors, or the one Dic argument

    bool operator==(const GroupSpec&) const = default;
};

// SyntaxError(line, col, expected) on malformed input. Numeric and
// group-theoretic constraints (prime powers, even dihedral order, unique
// involution under Dic) are deferred to build_spec.
GroupSpec parse_spec(const std::string& text);

// parse_spec(print_spec(s)) == s
std::string print_spec(const GroupSpec& spec);

// Builds the group. Maximal abelian runs (C/E factors) collapse into a
// single mixed-radix abelian group so generator labels match the abelian
// constructors (u, v, w, ...); other factors fold left into direct products.
Group build_spec(const GroupSpec& spec);
Group build_spec(const std::string& text);

const std::vector<std::string>& spec_atom_names();

}  // namespace gint
