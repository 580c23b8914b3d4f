#include "tqcsp/catalogue.hpp"

#include <cctype>

#include "tqcsp/errors.hpp"

namespace tqcsp {
namespace {

Atom at(int a, Rel op, int b) { return Atom{a - 1, op, b - 1}; }

// (x_i op x_{j+2}) for all i,j in {1,2}.
void add_separation(std::vector<Clause>& cs, Rel op) {
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) cs.push_back({at(i, op, j + 2)});
}

TemporalRelation make(std::string name, int arity, std::vector<Clause> clauses) {
  return TemporalRelation{std::move(name), arity, QfFormula{arity, std::move(clauses)}};
}

std::optional<TemporalRelation> build(std::string_view name) {
  using enum Rel;
  if (name == "D") return make("D", 3, {{at(1, Ne, 2), at(2, Eq, 3)}});
  if (name == "SD") return make("SD", 4, {{at(1, Ne, 2), at(3, Eq, 4)}});
  if (name == "Dis" || name == "NEQ2") return make("Dis", 4, {{at(1, Ne, 2), at(3, Ne, 4)}});
  if (name == "GSN") {
    std::vector<Clause> cs{{at(1, Ne, 2), at(3, Ne, 4)}, {at(1, Le, 2)}, {at(3, Le, 4)}};
    add_separation(cs, Lt);
    return make("GSN", 4, std::move(cs));
  }
  // The M-family is written with the first argument as pivot; under x1=x2
  // this is the same relation as the x2-pivoted table form.
  if (name == "M+") return make("M+", 3, {{at(1, Ne, 2), at(1, Ge, 3)}});
  if (name == "M-") return make("M-", 3, {{at(1, Ne, 2), at(1, Le, 3)}});
  if (name == "M<+") return make("M<+", 3, {{at(1, Ne, 2), at(1, Gt, 3)}});
  if (name == "M<-") return make("M<-", 3, {{at(1, Ne, 2), at(1, Lt, 3)}});
  if (name == "GM+") return make("GM+", 3, {{at(1, Ne, 2), at(1, Ge, 3)}, {at(1, Ge, 2)}});
  if (name == "GM-") return make("GM-", 3, {{at(1, Ne, 2), at(1, Le, 3)}, {at(1, Le, 2)}});
  if (name == "GVM<+")
    return make("GVM<+", 3,
                {{at(1, Ne, 2), at(1, Gt, 3)}, {at(1, Ge, 2)}, {at(1, Ne, 3)}, {at(2, Ne, 3)}});
  if (name == "GVM<-")
    return make("GVM<-", 3,
                {{at(1, Ne, 2), at(1, Lt, 3)}, {at(1, Le, 2)}, {at(1, Ne, 3)}, {at(2, Ne, 3)}});
  if (name == "SM") return make("SM", 4, {{at(1, Ne, 2), at(3, Ge, 4)}});
  if (name == "SM<" || name == "SSM") return make("SM<", 4, {{at(1, Ne, 2), at(3, Gt, 4)}});
  if (name == "lrGSM" || name == "rlGSM") {
    std::vector<Clause> cs{{at(1, Ne, 2), at(3, Ge, 4)}, {at(1, Ge, 2)}};
    add_separation(cs, name == "lrGSM" ? Lt : Gt);
    return make(std::string(name), 4, std::move(cs));
  }
  if (name == "lrGSM<" || name == "rlGSM<") {
    std::vector<Clause> cs{{at(1, Ne, 2), at(3, Gt, 4)}, {at(1, Ge, 2)}};
    add_separation(cs, name == "lrGSM<" ? Lt : Gt);
    cs.push_back({at(3, Ne, 4)});
    return make(std::string(name), 4, std::move(cs));
  }
  if (name == "Z") return make("Z", 4, {{at(1, Ne, 2), at(3, Ne, 4)}, {at(2, Lt, 4)}});
  if (name.size() > 3 && name.substr(0, 3) == "NAE") {
    int k = 0;
    for (char ch : name.substr(3)) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
      k = k * 10 + (ch - '0');
      if (k > 64) return std::nullopt;
    }
    if (k < 2) return std::nullopt;
    Clause c;
    for (int i = 2; i <= k; ++i) c.push_back(at(1, Ne, i));
    return make(std::string(name), k, {c});
  }
  return std::nullopt;
}

}  // namespace

std::optional<TemporalRelation> find_relation(std::string_view name) { return build(name); }

TemporalRelation catalogue(std::string_view name) {
  auto r = build(name);
  if (!r) throw Error("unknown relation name '" + std::string(name) + "'");
  return *r;
}

std::vector<std::string> catalogue_names() {
  return {"D",   "SD",    "Dis",   "GSN", "M+",    "M-",    "M<+",    "M<-",    "GM+",  "GM-",
          "GVM<+", "GVM<-", "SM", "SM<",   "lrGSM", "rlGSM", "lrGSM<", "rlGSM<", "Z", "NAE3"};
}

std::vector<Clause> instantiate(const TemporalRelation& r, const std::vector<int>& args) {
  if (static_cast<int>(args.size()) != r.arity)
    throw ArityError("relation " + r.name + " expects " + std::to_string(r.arity) +
                     " arguments, got " + std::to_string(args.size()));
  std::vector<Clause> out;
  out.reserve(r.defn.clauses.size());
  for (const Clause& c : r.defn.clauses) {
    Clause d;
    for (const Atom& a : c) d.push_back(Atom{args[a.lhs], a.op, args[a.rhs]});
    out.push_back(std::move(d));
  }
  return out;
}

TemporalRelation reversed(const TemporalRelation& r) {
  return TemporalRelation{r.name + "^rev", r.arity, reversed(r.defn)};
}

}  // namespace tqcsp
