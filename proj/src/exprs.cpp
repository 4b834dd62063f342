#include "bfk/exprs.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "bfk/biset_ops.hpp"

namespace bfk {
namespace {

[[noreturn]] void parse_fail(const std::string& text, std::size_t pos,
                             const std::string& what) {
  throw std::runtime_error("parse error at position " + std::to_string(pos) +
                           " in \"" + text + "\": " + what);
}

int trivial_index(const TablePtr& t) {
  ClassFunction one = t->trivial_character();
  for (int i = 0; i < t->num_classes(); ++i)
    if (t->row(i) == one) return i;
  throw std::logic_error("no trivial row");
}

ClassFunction gamma_cf_on(const GroupPtr& G, int n) {
  GroupPtr Qn = quaternion_group_n(n);
  ClassFunction g =
      CharacterTable::of(Qn)->to_class_function(gamma_n(n));
  if (auto m = is_generalized_quaternion(G); m && *m == n) {
    auto iso = find_isomorphism(Qn, G);
    return iso_transport(*iso, g);
  }
  for (const Subgroup& N : normal_subgroups(G)) {
    if (static_cast<long>(N.order()) * (1 << n) != G->order()) continue;
    QuotientModel Qm = quotient(G, N);
    if (auto m = is_generalized_quaternion(Qm.quo); m && *m == n) {
      auto iso = find_isomorphism(Qn, Qm.quo);
      return inflate(Qm, iso_transport(*iso, g));
    }
  }
  throw std::runtime_error("gamma(" + std::to_string(n) +
                           "): the group has no quotient isomorphic to Q_" +
                           std::to_string(1 << n));
}

VirtualCharacter to_vc(const GroupPtr& G, const ClassFunction& f) {
  auto v = CharacterTable::of(G)->to_virtual(f);
  if (!v) throw std::runtime_error("expression value is not a virtual character");
  return *v;
}

struct Parser {
  const std::string& text;
  std::size_t i = 0;
  int p;

  void skip() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  }
  bool eat(char c) {
    skip();
    if (i < text.size() && text[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      parse_fail(text, i, std::string("expected '") + c + "'");
  }
  bool peek_digit() {
    skip();
    return i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]));
  }
  long number() {
    skip();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == start) parse_fail(text, i, "expected integer");
    return std::stol(text.substr(start, i - start));
  }
  std::string ident() {
    skip();
    std::size_t start = i;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) ||
            text[i] == '_'))
      ++i;
    if (i == start) parse_fail(text, i, "expected identifier");
    return text.substr(start, i - start);
  }
  /// Balanced argument token (group spec): up to ',' or ')' at depth 0.
  std::string spec_token() {
    skip();
    std::size_t start = i;
    int depth = 0;
    while (i < text.size()) {
      char c = text[i];
      if (depth == 0 && (c == ',' || c == ')')) break;
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      ++i;
    }
    std::size_t end = i;
    while (end > start &&
           std::isspace(static_cast<unsigned char>(text[end - 1])))
      --end;
    if (end == start) parse_fail(text, i, "expected group spec");
    return text.substr(start, end - start);
  }

  VirtualCharacter expr(const GroupPtr& ctx) {
    bool neg = eat('-');
    VirtualCharacter acc = term(ctx);
    if (neg) acc = scale(-1, acc);
    while (true) {
      if (eat('+'))
        acc = acc + term(ctx);
      else if (eat('-'))
        acc = acc - term(ctx);
      else
        break;
    }
    return acc;
  }

  VirtualCharacter term(const GroupPtr& ctx) {
    if (peek_digit()) {
      long k = number();
      skip();
      if (i < text.size() && (text[i] == '*' || text[i] == '(' ||
                              std::isalpha(static_cast<unsigned char>(text[i])))) {
        eat('*');
        return scale(k, term(ctx));
      }
      // Bare integer: that multiple of the trivial character.
      TablePtr t = CharacterTable::of(ctx);
      VirtualCharacter v{ctx, std::vector<Int>(t->num_classes(), 0)};
      v.coeffs[trivial_index(t)] = k;
      return v;
    }
    return atom(ctx);
  }

  VirtualCharacter atom(const GroupPtr& ctx) {
    if (eat('(')) {
      VirtualCharacter v = expr(ctx);
      expect(')');
      return v;
    }
    std::string id = ident();
    bool is_op = id == "ind" || id == "res" || id == "infl" || id == "defl" ||
                 id == "indinf" || id == "defres";
    if (!ctx && !is_op)
      parse_fail(text, i, "a pipeline must start with an op call");
    if (id == "gamma") {
      expect('(');
      long n = number();
      expect(')');
      return to_vc(ctx, gamma_cf_on(ctx, static_cast<int>(n)));
    }
    if (id == "irr") {
      expect('(');
      long k = number();
      expect(')');
      TablePtr t = CharacterTable::of(ctx);
      if (k < 0 || k >= t->num_classes())
        parse_fail(text, i, "irr index out of range");
      VirtualCharacter v{ctx, std::vector<Int>(t->num_classes(), 0)};
      v.coeffs[static_cast<std::size_t>(k)] = 1;
      return v;
    }
    if (id == "classsum") {
      expect('(');
      std::string field = ident();
      expect(',');
      long k = number();
      expect(')');
      int pp;
      if (field == "Q")
        pp = 0;
      else if (field == "K")
        pp = p;
      else
        parse_fail(text, i, "classsum field must be Q or K");
      auto orbits = galois_orbits(CharacterTable::of(ctx), pp);
      if (k < 0 || static_cast<std::size_t>(k) >= orbits.size())
        parse_fail(text, i, "classsum orbit index out of range");
      return orbits[static_cast<std::size_t>(k)].class_sum;
    }
    if (is_op) return op_call(id, ctx);
    parse_fail(text, i, "unknown literal '" + id + "'");
  }

  VirtualCharacter inner(const GroupPtr& want) {
    VirtualCharacter v = expr(want);
    return v;
  }

  /// Transport a finished value into the required context if the groups
  /// are distinct but isomorphic objects.
  VirtualCharacter into(const GroupPtr& ctx, const VirtualCharacter& v) {
    if (!ctx || v.group == ctx) return v;
    auto iso = find_isomorphism(v.group, ctx);
    if (!iso)
      throw std::runtime_error(
          "op result group does not match the surrounding context");
    return to_vc(ctx, iso_transport(
                          *iso, CharacterTable::of(v.group)->to_class_function(v)));
  }

  VirtualCharacter op_call(const std::string& id, const GroupPtr& ctx) {
    expect('(');
    GroupPtr G = construct_named(spec_token());
    expect(',');
    VirtualCharacter out{nullptr, {}};
    if (id == "ind" || id == "res") {
      Subgroup H = resolve_subgroup(G, spec_token());
      expect(',');
      SubgroupModel sm = subgroup_model(G, H);
      if (id == "ind") {
        VirtualCharacter chi = inner(sm.grp);
        out = to_vc(G, induce(G, H,
                              CharacterTable::of(sm.grp)->to_class_function(chi)));
      } else {
        VirtualCharacter chi = inner(G);
        out = to_vc(sm.grp,
                    restrict_to(G, H,
                                CharacterTable::of(G)->to_class_function(chi)));
      }
    } else if (id == "infl" || id == "defl") {
      Subgroup N = resolve_normal(G, spec_token());
      expect(',');
      QuotientModel Qm = quotient(G, N);
      if (id == "infl") {
        VirtualCharacter chi = inner(Qm.quo);
        out = to_vc(G, inflate(Qm, CharacterTable::of(Qm.quo)->to_class_function(
                                       chi)));
      } else {
        VirtualCharacter chi = inner(G);
        out = to_vc(Qm.quo,
                    deflate(Qm, CharacterTable::of(G)->to_class_function(chi)));
      }
    } else {
      Subgroup H = resolve_subgroup(G, spec_token());
      expect(',');
      Subgroup N = resolve_normal_in(G, H, spec_token());
      expect(',');
      SectionModel S = section_model(G, H, N);
      if (id == "indinf") {
        VirtualCharacter chi = inner(S.HmodN.quo);
        out = to_vc(G, indinf(G, S,
                              CharacterTable::of(S.HmodN.quo)->to_class_function(
                                  chi)));
      } else {
        VirtualCharacter chi = inner(G);
        out = to_vc(S.HmodN.quo,
                    defres(G, S, CharacterTable::of(G)->to_class_function(chi)));
      }
    }
    expect(')');
    return into(ctx, out);
  }

  Subgroup resolve_normal(const GroupPtr& G, const std::string& spec) {
    GroupPtr target = construct_named(spec);
    for (const Subgroup& N : normal_subgroups(G)) {
      if (N.order() != target->order()) continue;
      if (is_isomorphic(subgroup_model(G, N).grp, target)) return N;
    }
    throw std::runtime_error("no normal subgroup isomorphic to " + spec);
  }

  Subgroup resolve_normal_in(const GroupPtr& G, const Subgroup& H,
                             const std::string& spec) {
    GroupPtr target = construct_named(spec);
    SubgroupModel sm = subgroup_model(G, H);
    for (const Subgroup& Nm : normal_subgroups(sm.grp)) {
      if (Nm.order() != target->order()) continue;
      if (!is_isomorphic(subgroup_model(sm.grp, Nm).grp, target)) continue;
      Subgroup N;
      for (int x : Nm.elems) N.elems.push_back(sm.to_parent[x]);
      std::sort(N.elems.begin(), N.elems.end());
      return N;
    }
    throw std::runtime_error("no normal subgroup of the section isomorphic to " +
                             spec);
  }
};

}  // namespace

Subgroup resolve_subgroup(const GroupPtr& G, const std::string& spec) {
  GroupPtr target = construct_named(spec);
  for (const Subgroup& S : subgroup_class_reps(G)) {
    if (S.order() != target->order()) continue;
    if (is_isomorphic(subgroup_model(G, S).grp, target)) return S;
  }
  throw std::runtime_error("no subgroup of " + G->name() + " isomorphic to " +
                           spec);
}

VirtualCharacter parse_char_expr(const GroupPtr& G, const std::string& text,
                                 int p) {
  Parser ps{text, 0, p};
  VirtualCharacter v = ps.expr(G);
  ps.skip();
  if (ps.i != text.size()) parse_fail(text, ps.i, "trailing input");
  return v;
}

OpsResult parse_ops_expr(const std::string& text, int p) {
  Parser ps{text, 0, p};
  ps.skip();
  VirtualCharacter v = ps.atom(nullptr);
  ps.skip();
  if (ps.i != text.size()) parse_fail(text, ps.i, "trailing input");
  return OpsResult{v.group, v};
}

}  // namespace bfk
