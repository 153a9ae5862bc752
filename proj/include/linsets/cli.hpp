// Command-line front end: construct, analyze, verify, sweep.
//
// Exit codes: 0 all verdicts pass, 1 a bound or prediction violation,
// 2 usage error (including exceeded caps and budgets).
#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linsets/bounds.hpp"
#include "linsets/common.hpp"
#include "linsets/constructions.hpp"
#include "linsets/oracle.hpp"
#include "linsets/serialize.hpp"

namespace linsets::cli {

using nlohmann::json;

struct GlobalOpts {
  std::string format = "table";
  u64 cap = kDefaultFieldCap;
  u64 seed = 1;
  bool override_thm16_gate = false;
};

struct ConstructResult {
  std::shared_ptr<Tower> tower;
  FqSubspace U;
  Prediction pred;
  json params;
};

namespace detail {

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
  require(!out.empty(), "empty integer list");
  return out;
}

inline ConstructResult build_jv(u64 q, int t_deg, std::optional<int> n_opt,
                                const std::vector<int>& ks, u64 cap) {
  int n = n_opt.value_or(t_deg);
  require(n % t_deg == 0, "t must divide n");
  ConstructResult res;
  res.tower = std::make_shared<Tower>(tower_for(q, {t_deg, n}, cap));
  u64 p;
  unsigned e;
  prime_power_decompose(q, p, e);
  JVParams params = make_jv_params(*res.tower, static_cast<int>(e),
                                   static_cast<int>(e) * n, t_deg, ks);
  auto [U, pred] = jv_build(params);
  res.U = std::move(U);
  res.pred = std::move(pred);
  res.params = {{"type", "jv"}, {"q", q}, {"t", t_deg}, {"n", n}, {"ks", ks},
                {"lambda", res.tower->encode(params.lambda)}};
  return res;
}

inline ConstructResult build_caserta(u64 q, int s, int t, int r, const std::vector<int>& uks,
                                     int swap_coord, u64 cap) {
  ConstructResult res;
  int n = s * t;
  res.tower = std::make_shared<Tower>(tower_for(q, {t, n}, cap));
  u64 p;
  unsigned e;
  prime_power_decompose(q, p, e);
  int ee = static_cast<int>(e);
  JVParams jvp = make_jv_params(*res.tower, ee, ee * t, t, uks);
  auto [Uprime, base_pred] = jv_build(jvp);
  if (swap_coord > 0) {
    require(swap_coord <= jvp.d(), "swap coordinate out of range");
    std::vector<std::vector<Element>> M(jvp.d() + 1,
                                        std::vector<Element>(jvp.d() + 1, res.tower->zero()));
    for (int i = 0; i <= jvp.d(); ++i) M[i][i] = res.tower->one();
    M[0][0] = M[swap_coord][swap_coord] = res.tower->zero();
    M[0][swap_coord] = M[swap_coord][0] = res.tower->one();
    Uprime = apply_gl(Uprime, M, /*verify=*/false);
  }
  CasertaParams cp;
  cp.tw = res.tower.get();
  cp.e = ee;
  cp.t_abs = ee * t;
  cp.m = ee * n;
  cp.Z = make_z(*res.tower, ee * t, ee * n, r);
  cp.Uprime = std::move(Uprime);
  auto [U, pred] = caserta_build(cp, std::nullopt, cap);
  res.U = std::move(U);
  res.pred = std::move(pred);
  res.params = {{"type", "caserta"}, {"q", q}, {"s", s}, {"t", t}, {"r", r},
                {"uks", uks}, {"swap", swap_coord}};
  return res;
}

inline ConstructResult build_prime(u64 q, int n, int d, int r, int k1, u64 cap) {
  ConstructResult res;
  res.tower = std::make_shared<Tower>(tower_for(q, {n}, cap));
  u64 p;
  unsigned e;
  prime_power_decompose(q, p, e);
  auto [U, pred] = prime_build(*res.tower, static_cast<int>(e), n, d, r, k1);
  res.U = std::move(U);
  res.pred = std::move(pred);
  res.params = {{"type", "prime"}, {"q", q}, {"n", n}, {"d", d}, {"r", r}, {"k1", k1}};
  return res;
}

inline ConstructResult build_product(u64 q, int t, int s, const std::vector<int>& u1ks,
                                     const std::vector<int>& u2ks, u64 cap) {
  ConstructResult res;
  int n = s * t;
  res.tower = std::make_shared<Tower>(tower_for(q, {t, n}, cap));
  u64 p;
  unsigned e;
  prime_power_decompose(q, p, e);
  int ee = static_cast<int>(e);
  const Tower& tw = *res.tower;

  // U_1: product of power spans over F_{q^t} inside F_{q^n}
  int d1 = static_cast<int>(u1ks.size()) - 1;
  Context c1{&tw, ee * t, ee * n, d1};
  int max_l = *std::max_element(u1ks.begin(), u1ks.end());
  require(max_l <= s, "u1 degrees exceed the relative degree s");
  Element lambda1 = max_l > 1 ? least_of_degree(tw, ee * t, s) : tw.one();
  std::vector<std::vector<Element>> rows1;
  for (int i = 0; i <= d1; ++i) {
    Element pw = tw.one();
    for (int j = 0; j < u1ks[i]; ++j) {
      rows1.push_back(unit_vec(c1, i, pw));
      pw = tw.mul(pw, lambda1);
    }
  }
  FqSubspace U1 = span_fq(c1, rows1);

  JVParams jvp = make_jv_params(tw, ee, ee * t, t, u2ks);
  auto [U2, pred2] = jv_build(jvp);
  auto [U, pred] = product_build(U1, U2, std::nullopt, cap);
  res.U = std::move(U);
  res.pred = std::move(pred);
  res.params = {{"type", "product"}, {"q", q}, {"t", t}, {"s", s},
                {"u1_ks", u1ks}, {"u2_ks", u2ks}};
  return res;
}

inline json prediction_to_json(const Tower& t, const Prediction& p) {
  json j;
  j["rank"] = p.rank;
  if (p.size) j["size"] = *p.size;
  if (p.w_e0) j["w_E0"] = *p.w_e0;
  if (p.spectrum) j["spectrum"] = *p.spectrum;
  if (p.N) {
    std::vector<u64> n(p.N->begin() + 1, p.N->end());
    j["N"] = n;
  }
  if (!p.N_at.empty()) {
    json at = json::object();
    for (auto& [i, v] : p.N_at) at[std::to_string(i)] = v;
    j["N_at"] = at;
  }
  if (p.d_minimum) j["d_minimum"] = *p.d_minimum;
  if (!p.r_min_claims.empty()) {
    std::vector<int> rs;
    for (auto& c : p.r_min_claims) rs.push_back(c.r);
    j["r_minimum_claims"] = rs;
  }
  return j;
}

inline json verdict_to_json(const Verdict& v) {
  return json{{"pass", v.pass}, {"failures", v.failures}};
}

struct Row {
  u64 q = 0;
  int n = 0, d = 0, k = 0;
  u64 size = 0;
  u64 bound = 0;
  i64 slack = 0;
  std::string cls;
};

inline void print_rows(const std::vector<Row>& rows, const std::string& format,
                       std::ostream& out) {
  if (format == "csv") {
    out << "q,n,d,k,size,bound,slack,class\n";
    for (const auto& r : rows)
      out << r.q << "," << r.n << "," << r.d << "," << r.k << "," << r.size << "," << r.bound
          << "," << r.slack << "," << r.cls << "\n";
  } else {
    out << std::left << std::setw(5) << "q" << std::setw(4) << "n" << std::setw(4) << "d"
        << std::setw(4) << "k" << std::setw(10) << "size" << std::setw(10) << "bound"
        << std::setw(8) << "slack" << "class" << "\n";
    for (const auto& r : rows)
      out << std::left << std::setw(5) << r.q << std::setw(4) << r.n << std::setw(4) << r.d
          << std::setw(4) << r.k << std::setw(10) << r.size << std::setw(10) << r.bound
          << std::setw(8) << r.slack << r.cls << "\n";
  }
}

inline Row construct_row(const ConstructResult& res, const LinearSetReport& rep,
                         const Verdict& verdict) {
  Row row;
  row.q = res.U.ctx.q();
  row.n = res.U.ctx.n();
  row.d = res.U.ctx.d;
  row.k = res.U.rank();
  row.size = rep.size;
  row.bound = power_sum(row.q, row.k, row.d) + 1;
  row.slack = static_cast<i64>(row.size) - static_cast<i64>(row.bound);
  if (!verdict.pass) row.cls = "FAILED";
  else if (rep.size == row.bound) row.cls = "d-minimum";
  else if (!res.pred.r_min_claims.empty())
    row.cls = "(" + std::to_string(res.pred.r_min_claims.front().r) + "," +
              std::to_string(row.d) + ")-minimum";
  else row.cls = "above-bound";
  return row;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline ConstructResult build_from_params(const json& p, u64 cap) {
  std::string type = p.at("type").get<std::string>();
  if (type == "jv") {
    std::optional<int> n;
    if (p.contains("n")) n = p.at("n").get<int>();
    return build_jv(p.at("q").get<u64>(), p.at("t").get<int>(), n,
                    p.at("ks").get<std::vector<int>>(), cap);
  }
  if (type == "caserta")
    return build_caserta(p.at("q").get<u64>(), p.at("s").get<int>(), p.at("t").get<int>(),
                         p.at("r").get<int>(), p.at("uks").get<std::vector<int>>(),
                         p.value("swap", 0), cap);
  if (type == "prime")
    return build_prime(p.at("q").get<u64>(), p.at("n").get<int>(), p.at("d").get<int>(),
                       p.at("r").get<int>(), p.at("k1").get<int>(), cap);
  if (type == "product")
    return build_product(p.at("q").get<u64>(), p.at("t").get<int>(), p.at("s").get<int>(),
                         p.at("u1_ks").get<std::vector<int>>(),
                         p.at("u2_ks").get<std::vector<int>>(), cap);
  throw UsageError("unknown construction type: " + type);
}

}  // namespace detail

/// Runs the CLI on the given arguments; all output goes to the streams.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  GlobalOpts g;
  CLI::App app{"exact linear-set construction and bound verification"};
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--cap", g.cap, "enumeration cap");
  app.add_option("--seed", g.seed, "seed echoed into reports (reserved for generators)");
  app.add_flag("--override-thm16-gate", g.override_thm16_gate,
               "skip the n <= q gate of the prime-degree bound");

  auto* construct = app.add_subcommand("construct", "build a construction and verify it");
  u64 c_q = 2;
  int c_t = 2, c_s = 2, c_r = 1, c_d = 1, c_k1 = 2;
  std::optional<int> c_n;
  std::string c_ks, c_uks, c_u1ks, c_u2ks;
  int c_swap = 0;
  auto* jv = construct->add_subcommand("jv", "power-span product");
  jv->add_option("--q", c_q)->required();
  jv->add_option("--t", c_t)->required();
  jv->add_option("--n", c_n);
  jv->add_option("--ks", c_ks, "comma-separated k_0,..,k_d")->required();
  auto* caserta = construct->add_subcommand("caserta", "shifted lift");
  caserta->add_option("--q", c_q)->required();
  caserta->add_option("--s", c_s)->required();
  caserta->add_option("--t", c_t)->required();
  caserta->add_option("--r", c_r)->required();
  caserta->add_option("--uks", c_uks, "k's of the base power-span product")->required();
  caserta->add_option("--swap", c_swap, "swap coordinate 0 with this one before lifting");
  auto* prime = construct->add_subcommand("prime", "tight prime-degree family");
  prime->add_option("--q", c_q)->required();
  prime->add_option("--n", c_n)->required();
  prime->add_option("--d", c_d)->required();
  prime->add_option("--r", c_r)->required();
  prime->add_option("--k1", c_k1)->required();
  auto* product = construct->add_subcommand("product", "mixed-field product");
  product->add_option("--q", c_q)->required();
  product->add_option("--t", c_t)->required();
  product->add_option("--s", c_s)->required();
  product->add_option("--u1-ks", c_u1ks)->required();
  product->add_option("--u2-ks", c_u2ks)->required();
  construct->require_subcommand(1);

  std::string an_file;
  auto* analyze = app.add_subcommand("analyze", "report on a subspace file");
  analyze->add_option("file", an_file)->required();

  auto* verify = app.add_subcommand("verify", "verify bounds and identities");
  std::string v_file, v_omega;
  auto* v14 = verify->add_subcommand("thm14", "subspace bound at a given Omega");
  v14->add_option("file", v_file)->required();
  v14->add_option("--omega", v_omega, "subspace file for Omega")->required();
  auto* v16 = verify->add_subcommand("thm16", "prime-degree bound");
  v16->add_option("file", v_file)->required();
  auto* vid = verify->add_subcommand("identities", "weight identities plus oracle cross-check");
  vid->add_option("file", v_file)->required();
  auto* vcl = verify->add_subcommand("classify", "minimum-size classification");
  vcl->add_option("file", v_file)->required();
  verify->require_subcommand(1);

  std::string sweep_file;
  auto* sweep = app.add_subcommand("sweep", "run a suite of constructions");
  sweep->add_option("file", sweep_file)->required();

  app.require_subcommand(1);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (construct->parsed()) {
      ConstructResult res;
      if (jv->parsed())
        res = detail::build_jv(c_q, c_t, c_n, detail::parse_int_list(c_ks), g.cap);
      else if (caserta->parsed())
        res = detail::build_caserta(c_q, c_s, c_t, c_r, detail::parse_int_list(c_uks), c_swap,
                                    g.cap);
      else if (prime->parsed())
        res = detail::build_prime(c_q, c_n.value_or(2), c_d, c_r, c_k1, g.cap);
      else
        res = detail::build_product(c_q, c_t, c_s, detail::parse_int_list(c_u1ks),
                                    detail::parse_int_list(c_u2ks), g.cap);
      LinearSetReport rep = report(res.U, g.cap);
      Verdict verdict = check_construction(res.U, res.pred, g.cap);
      if (g.format == "json") {
        json j;
        j["tool"] = kVersion;
        j["seed"] = g.seed;
        j["tower"] = io::tower_to_json(*res.tower);
        j["params"] = res.params;
        j["subspace"] = io::subspace_to_json(res.U);
        j["prediction"] = detail::prediction_to_json(*res.tower, res.pred);
        j["report"] = io::report_to_json(rep);
        j["verdict"] = detail::verdict_to_json(verdict);
        out << j.dump(2) << "\n";
      } else {
        detail::print_rows({detail::construct_row(res, rep, verdict)}, g.format, out);
        for (const auto& f : verdict.failures) out << "failure: " << f << "\n";
      }
      return verdict.pass ? 0 : 1;
    }

    if (analyze->parsed()) {
      json j = detail::load_json_file(an_file);
      if (j.contains("subspace")) j = j.at("subspace");
      io::LoadedSubspace loaded = io::subspace_from_json(j, g.cap);
      LinearSetReport rep = report(loaded.U, g.cap);
      if (g.format == "json") {
        json o;
        o["tool"] = kVersion;
        o["tower"] = io::tower_to_json(*loaded.tower);
        o["report"] = io::report_to_json(rep);
        out << o.dump(2) << "\n";
      } else {
        detail::Row row;
        row.q = loaded.U.ctx.q();
        row.n = loaded.U.ctx.n();
        row.d = loaded.U.ctx.d;
        row.k = loaded.U.rank();
        row.size = rep.size;
        row.bound = power_sum(row.q, row.k, row.d) + 1;
        row.slack = static_cast<i64>(row.size) - static_cast<i64>(row.bound);
        row.cls = rep.identities_hold() ? "identities-ok" : "identities-FAILED";
        detail::print_rows({row}, g.format, out);
      }
      return rep.identities_hold() ? 0 : 1;
    }

    if (verify->parsed()) {
      json j = detail::load_json_file(v_file);
      if (j.contains("subspace")) j = j.at("subspace");
      io::LoadedSubspace loaded = io::subspace_from_json(j, g.cap);
      const FqSubspace& U = loaded.U;
      if (v14->parsed() || v16->parsed()) {
        BoundCertificate cert;
        if (v14->parsed()) {
          json oj = detail::load_json_file(v_omega);
          if (oj.contains("subspace")) oj = oj.at("subspace");
          ProjSubspace omega = io::projsubspace_from_json(oj, U.ctx);
          cert = verify_thm14(U, omega, g.cap);
        } else {
          cert = verify_thm16(U, g.override_thm16_gate, g.cap);
        }
        if (g.format == "json") {
          json o;
          o["tool"] = kVersion;
          o["tower"] = io::tower_to_json(*loaded.tower);
          o["certificate"] = io::certificate_to_json(cert);
          out << o.dump(2) << "\n";
        } else {
          detail::Row row{cert.q, cert.n, cert.d, cert.k, cert.size, cert.bound,
                          static_cast<i64>(cert.slack),
                          cert.equality ? "equality" : "strict"};
          detail::print_rows({row}, g.format, out);
        }
        return 0;  // violations throw CheckFailed
      }
      if (vid->parsed()) {
        LinearSetReport fast = report(U, g.cap);
        oracle::OracleConfig cfg;
        cfg.max_vectors = g.cap;
        LinearSetReport slow = oracle::exhaustive_report(U, cfg);
        bool ok = fast.identities_hold() && oracle::same_report(fast, slow);
        if (g.format == "json") {
          json o;
          o["tool"] = kVersion;
          o["report"] = io::report_to_json(fast);
          o["oracle_matches"] = oracle::same_report(fast, slow);
          o["pass"] = ok;
          out << o.dump(2) << "\n";
        } else {
          out << (ok ? "identities: pass (oracle matches)\n" : "identities: FAIL\n");
        }
        return ok ? 0 : 1;
      }
      // classify
      MinSizeClass cls = classify_minimum(U, g.cap);
      if (g.format == "json") {
        json o;
        o["tool"] = kVersion;
        o["k"] = cls.k;
        o["d"] = cls.d;
        o["size"] = cls.size;
        o["d_minimum_value"] = cls.d_minimum_value;
        o["d_minimum"] = cls.d_minimum;
        o["proper_d_minimum"] = cls.proper_d_minimum;
        json rmin = json::array();
        for (int r = 1; r <= cls.d; ++r) {
          const char* st = cls.r_status[r - 1] == SearchStatus::Found ? "found"
                           : cls.r_status[r - 1] == SearchStatus::Exhausted ? "budget-exhausted"
                                                                            : "not-found";
          rmin.push_back({{"r", r}, {"status", st}});
        }
        o["r_minimum"] = rmin;
        out << o.dump(2) << "\n";
      } else {
        out << "size " << cls.size << ", d-minimum value " << cls.d_minimum_value << ", d-minimum "
            << (cls.d_minimum ? "yes" : "no") << ", proper " << (cls.proper_d_minimum ? "yes" : "no")
            << "\n";
        for (int r = 1; r <= cls.d; ++r)
          out << "(" << r << "," << cls.d << ")-minimum: "
              << (cls.r_status[r - 1] == SearchStatus::Found ? "yes"
                  : cls.r_status[r - 1] == SearchStatus::Exhausted ? "budget-exhausted" : "no")
              << "\n";
      }
      return 0;
    }

    // sweep
    json suite = detail::load_json_file(sweep_file);
    require(suite.contains("instances"), "suite file needs an 'instances' array");
    std::vector<detail::Row> rows;
    json results = json::array();
    bool all_pass = true;
    for (const auto& inst : suite.at("instances")) {
      ConstructResult res = detail::build_from_params(inst, g.cap);
      LinearSetReport rep = report(res.U, g.cap);
      Verdict verdict = check_construction(res.U, res.pred, g.cap);
      all_pass = all_pass && verdict.pass;
      rows.push_back(detail::construct_row(res, rep, verdict));
      if (g.format == "json") {
        json r;
        r["params"] = res.params;
        r["prediction"] = detail::prediction_to_json(*res.tower, res.pred);
        r["report"] = io::report_to_json(rep);
        r["verdict"] = detail::verdict_to_json(verdict);
        results.push_back(r);
      }
    }
    if (g.format == "json") {
      json o;
      o["tool"] = kVersion;
      o["results"] = results;
      o["pass"] = all_pass;
      out << o.dump(2) << "\n";
    } else {
      detail::print_rows(rows, g.format, out);
      if (g.format == "table") out << (all_pass ? "all instances pass\n" : "FAILURES present\n");
    }
    return all_pass ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailed& e) {
    err << "verification failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace linsets::cli
