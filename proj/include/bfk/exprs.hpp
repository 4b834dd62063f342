#pragma once

#include <string>

#include "bfk/kappa.hpp"

namespace bfk {

/// Character expression grammar, evaluated in the context of a group:
///   expr     := term (('+' | '-') term)*
///   term     := integer ['*' atom] | atom
///   atom     := gamma(n) | irr(i) | classsum(Q|K, i) | op-call | (expr)
///   op-call  := ind(G,H,e) | res(G,H,e) | infl(G,N,e) | defl(G,N,e)
///             | indinf(G,H,N,e) | defres(G,H,N,e)
/// gamma(n) resolves to the gamma class of Q_{2^n} transported along an
/// isomorphism, or inflated through a normal subgroup with quaternion
/// quotient. In op-calls, H and N are group specs resolved to the first
/// subgroup class (resp. normal subgroup) isomorphic to them; a bare
/// integer means that multiple of the trivial character.
VirtualCharacter parse_char_expr(const GroupPtr& G, const std::string& text,
                                 int p = 2);

struct OpsResult {
  GroupPtr group;
  VirtualCharacter value;
};
/// Top-level pipeline whose outermost op determines the group.
OpsResult parse_ops_expr(const std::string& text, int p = 2);

/// First subgroup class representative of G isomorphic to the spec'd
/// group; throws when there is none.
Subgroup resolve_subgroup(const GroupPtr& G, const std::string& spec);

}  // namespace bfk
