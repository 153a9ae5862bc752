// JSON serialization: towers, subspaces, reports, and bound certificates.
//
// Element coefficients are written as base-p integer encodings of their flat
// coordinate vectors (sum c_i p^i), so files are plain integers end to end
// and byte-stable across runs.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "linsets/bounds.hpp"
#include "linsets/common.hpp"
#include "linsets/fields.hpp"
#include "linsets/linset.hpp"
#include "linsets/projgeo.hpp"

namespace linsets::io {

using nlohmann::json;

inline json tower_to_json(const Tower& t) {
  json j;
  j["p"] = t.p();
  j["degrees"] = t.degrees();
  json defs = json::array();
  for (const auto& level : t.levels()) {
    json poly = json::array();
    for (const Element& c : level.defining) poly.push_back(t.encode(c));
    defs.push_back(poly);
  }
  j["defining_polynomials"] = defs;
  return j;
}

/// Rebuilds the tower from (p, degrees) and verifies the listed defining
/// polynomials match the deterministic construction.
inline std::shared_ptr<Tower> tower_from_json(const json& j, u64 cap = kDefaultFieldCap,
                                              bool override_cap = false) {
  require(j.contains("p") && j.contains("degrees"), "tower record needs p and degrees");
  u64 p = j.at("p").get<u64>();
  std::vector<int> degrees = j.at("degrees").get<std::vector<int>>();
  auto t = std::make_shared<Tower>(Tower::build(p, degrees, cap, override_cap));
  if (j.contains("defining_polynomials")) {
    const json& defs = j.at("defining_polynomials");
    require(defs.size() == t->levels().size(), "defining polynomial count mismatch");
    for (size_t i = 0; i < defs.size(); ++i) {
      const auto& level = t->levels()[i];
      require(defs[i].size() == level.defining.size(),
              "defining polynomial degree mismatch at level " + std::to_string(i));
      for (size_t c = 0; c < level.defining.size(); ++c)
        require(defs[i][c].get<u64>() == t->encode(level.defining[c]),
                "defining polynomial disagrees with the deterministic tower");
    }
  }
  return t;
}

inline json element_to_json(const Tower& t, const Element& a) {
  json arr = json::array();
  for (int i = 0; i < t.top_degree(); ++i) arr.push_back(a.c[i]);
  return arr;
}

inline Element element_from_json(const Tower& t, const json& j) {
  Element a{};
  require(j.is_array() && static_cast<int>(j.size()) <= t.top_degree(),
          "element coefficient array too long");
  for (size_t i = 0; i < j.size(); ++i) {
    u64 v = j[i].get<u64>();
    require(v < t.p(), "coefficient out of range");
    a.c[i] = static_cast<std::uint16_t>(v);
  }
  return a;
}

inline json vector_to_json(const Tower& t, const std::vector<Element>& v) {
  json arr = json::array();
  for (const Element& a : v) arr.push_back(element_to_json(t, a));
  return arr;
}

inline std::vector<Element> vector_from_json(const Tower& t, const json& j) {
  std::vector<Element> v;
  for (const auto& item : j) v.push_back(element_from_json(t, item));
  return v;
}

inline json subspace_to_json(const FqSubspace& U) {
  const Tower& t = *U.ctx.tw;
  json j;
  j["tower"] = tower_to_json(t);
  j["base_degree"] = U.ctx.e;
  j["ext_degree"] = U.ctx.m;
  j["ambient_dim"] = U.ctx.d;
  json basis = json::array();
  for (int i = 0; i < U.rank(); ++i) basis.push_back(vector_to_json(t, U.fold_row(i)));
  j["basis"] = basis;
  return j;
}

struct LoadedSubspace {
  std::shared_ptr<Tower> tower;
  FqSubspace U;
};

inline LoadedSubspace subspace_from_json(const json& j, u64 cap = kDefaultFieldCap,
                                         bool override_cap = false) {
  LoadedSubspace out;
  out.tower = tower_from_json(j.at("tower"), cap, override_cap);
  int e = j.at("base_degree").get<int>();
  int m = j.contains("ext_degree") ? j.at("ext_degree").get<int>() : out.tower->top_degree();
  int d = j.at("ambient_dim").get<int>();
  Context ctx{out.tower.get(), e, m, d};
  std::vector<std::vector<Element>> rows;
  for (const auto& row : j.at("basis")) rows.push_back(vector_from_json(*out.tower, row));
  out.U = span_fq(ctx, rows);
  return out;
}

inline json projsubspace_to_json(const ProjSubspace& W) {
  const Tower& t = *W.ctx.tw;
  json j;
  j["tower"] = tower_to_json(t);
  j["base_degree"] = W.ctx.m;  // an F_{q^n}-subspace is a subspace over its own field
  j["ext_degree"] = W.ctx.m;
  j["ambient_dim"] = W.ctx.d;
  json basis = json::array();
  for (const auto& row : W.rows) basis.push_back(vector_to_json(t, row));
  j["basis"] = basis;
  return j;
}

inline ProjSubspace projsubspace_from_json(const json& j, const Context& ambient) {
  std::vector<std::vector<Element>> rows;
  for (const auto& row : j.at("basis")) rows.push_back(vector_from_json(*ambient.tw, row));
  return proj_span(ambient, std::move(rows));
}

inline json report_to_json(const LinearSetReport& r) {
  json j;
  j["size"] = r.size;
  j["rank"] = r.rank;
  std::vector<u64> n(r.N.begin() + 1, r.N.end());
  j["N"] = n;
  j["spectrum"] = r.spectrum;
  j["identities"] = {{"card_sum", r.id_card_sum},
                     {"vector_count", r.id_vector_count},
                     {"upper_bound", r.id_upper_bound},
                     {"mod_q", r.id_mod_q}};
  return j;
}

inline const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::Thm14: return "subspace_bound";
    case BoundKind::Thm16: return "prime_degree_bound";
    case BoundKind::CorWeight1: return "weight_one_point_bound";
  }
  return "unknown";
}

inline json certificate_to_json(const BoundCertificate& c) {
  json j;
  j["kind"] = bound_kind_name(c.kind);
  j["q"] = c.q;
  j["n"] = c.n;
  j["d"] = c.d;
  j["k"] = c.k;
  j["r"] = c.r;
  j["I_omega"] = c.i_omega;
  j["bound"] = c.bound;
  j["size"] = c.size;
  j["slack"] = c.slack;
  j["equality"] = c.equality;
  if (c.omega) {
    json basis = json::array();
    for (const auto& row : c.omega->rows) basis.push_back(vector_to_json(*c.omega->ctx.tw, row));
    j["omega_basis"] = basis;
  }
  return j;
}

}  // namespace linsets::io
