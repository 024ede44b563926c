// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>

#include <json.hpp>

namespace zibayes {

namespace {

using nlohmann::json;

json encode_log_value(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

double decode_log_value(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("report: bad log value '" + s + "'");
  }
  return j.get<double>();
}

std::vector<std::pair<std::string, double>> estimates_of(
    const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> std::vector<std::pair<std::string, double>> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PoissonParams>) {
          return {{"theta", p.theta}};
        } else if constexpr (std::is_same_v<T, NbParams>) {
          return {{"gamma", p.gamma}, {"kappa", p.kappa}};
        } else if constexpr (std::is_same_v<T, ZipParams>) {
          return {{"alpha", p.alpha}, {"theta", p.theta}};
        } else {
          return {{"alpha", p.alpha}, {"gamma", p.gamma}, {"kappa", p.kappa}};
        }
      },
      params);
}

json fit_to_json(const FitSummary& f) {
  json j;
  j["family"] = family_name(f.family);
  j["converged"] = f.converged;
  j["at_boundary"] = f.at_boundary;
  j["iterations"] = f.iterations;
  j["k"] = f.k;
  json est = json::object();
  for (const auto& [name, value] : f.estimates) est[name] = value;
  j["estimates"] = est;
  j["loglik"] = f.loglik ? json(*f.loglik) : json();
  j["aic"] = f.aic ? json(*f.aic) : json();
  j["message"] = f.message;
  return j;
}

FitSummary fit_from_json(const json& j) {
  FitSummary f;
  f.family = family_from_name(j.at("family").get<std::string>());
  f.converged = j.at("converged").get<bool>();
  f.at_boundary = j.at("at_boundary").get<bool>();
  f.iterations = j.at("iterations").get<int>();
  f.k = j.at("k").get<int>();
  // keep a stable key order so the round trip is exact
  const auto& est = j.at("estimates");
  for (const char* key : {"alpha", "gamma", "kappa", "theta"}) {
    if (est.contains(key)) f.estimates.emplace_back(key, est[key].get<double>());
  }
  if (!j.at("loglik").is_null()) f.loglik = j["loglik"].get<double>();
  if (!j.at("aic").is_null()) f.aic = j["aic"].get<double>();
  f.message = j.at("message").get<std::string>();
  return f;
}

}  // namespace

AnalysisReport build_report(const CountSample& sample, double gamma_bayes,
                            EvalMode mode) {
  AnalysisReport rep;
  rep.gamma_bayes = gamma_bayes;
  rep.mode = mode;

  const SufficientStats st = compute_suff_stats(sample);
  rep.data.n = st.n;
  rep.data.zero_count = st.zero_count;
  rep.data.total = st.total;
  rep.data.zero_pct = 100.0 * static_cast<double>(st.zero_count) /
                      static_cast<double>(st.n);

  std::map<Family, FitResult> fit_results;
  for (Family fam :
       {Family::Nb, Family::Poisson, Family::Zinb, Family::Zip}) {
    FitSummary s;
    s.family = fam;
    s.k = free_param_count(fam);
    try {
      const FitResult f = fit(fam, sample);
      fit_results.emplace(fam, f);
      s.converged = f.converged;
      s.at_boundary = f.at_boundary;
      s.iterations = f.iterations;
      // canonical key order for the round trip
      auto est = estimates_of(f.params);
      std::sort(est.begin(), est.end());
      s.estimates = est;
      s.loglik = f.loglik;
      s.aic = f.aic;
      if (!f.converged) {
        s.message = "maximization process does not converge";
      }
    } catch (const std::exception& e) {
      s.message = std::string("cannot be fitted: ") + e.what();
    }
    rep.fits.push_back(std::move(s));
  }

  for (BfComparison c :
       {BfComparison::NbVsPoisson, BfComparison::ZipVsPoisson,
        BfComparison::ZinbVsNb, BfComparison::ZinbVsZip}) {
    const BfResult bf = log_bayes_factor(sample, c, gamma_bayes, mode);
    BfSummary s;
    s.comparison = c;
    s.log_bf = bf.log_bf;
    s.interpretation = bf.interpretation;
    s.degenerate_all_zero = bf.degenerate_all_zero;
    s.composed_log_bf = bf.composed_log_bf;
    rep.bayes_factors.push_back(s);

    VuongSummary v;
    v.comparison = c;
    const auto it1 = fit_results.find(comparison_m1(c));
    const auto it0 = fit_results.find(comparison_m0(c));
    if (it1 == fit_results.end() || it0 == fit_results.end() ||
        !it1->second.converged || !it0->second.converged) {
      v.message = "fit unavailable";
    } else {
      try {
        const VuongResult res = vuong_test(it1->second, it0->second, sample);
        v.available = true;
        v.z = res.z;
        v.n_effective = res.n_effective;
        v.preferred = res.preferred == VuongPreference::Model1 ? "m1"
                      : res.preferred == VuongPreference::Model0
                          ? "m0"
                          : "indeterminate";
      } catch (const std::exception& e) {
        v.message = e.what();
      }
    }
    rep.vuong.push_back(std::move(v));
  }

  const InflationCheck infl = zero_inflation_check(sample);
  rep.inflation.ratio = infl.ratio;
  rep.inflation.inflated = infl.inflated;
  return rep;
}

std::string report_to_json(const AnalysisReport& rep) {
  json j;
  j["schema_version"] = rep.schema_version;
  j["data"] = {{"n", rep.data.n},
               {"zero_count", rep.data.zero_count},
               {"total", rep.data.total},
               {"zero_pct", rep.data.zero_pct}};
  j["gamma_bayes"] = rep.gamma_bayes;
  j["mode"] = eval_mode_name(rep.mode);
  json fits = json::array();
  for (const FitSummary& f : rep.fits) fits.push_back(fit_to_json(f));
  j["fits"] = fits;
  json bfs = json::array();
  for (const BfSummary& b : rep.bayes_factors) {
    json e;
    e["comparison"] = comparison_name(b.comparison);
    e["log_bf"] = encode_log_value(b.log_bf);
    e["interpretation"] = evidence_name(b.interpretation);
    e["description"] = evidence_description(b.interpretation, b.comparison);
    e["degenerate_all_zero"] = b.degenerate_all_zero;
    e["composed_log_bf"] =
        b.composed_log_bf ? encode_log_value(*b.composed_log_bf) : json();
    bfs.push_back(e);
  }
  j["bayes_factors"] = bfs;
  json vuongs = json::array();
  for (const VuongSummary& v : rep.vuong) {
    json e;
    e["comparison"] = comparison_name(v.comparison);
    e["available"] = v.available;
    e["z"] = v.z;
    e["n_effective"] = v.n_effective;
    e["preferred"] = v.preferred;
    e["message"] = v.message;
    vuongs.push_back(e);
  }
  j["vuong"] = vuongs;
  j["inflation"] = {{"ratio", rep.inflation.ratio},
                    {"inflated", rep.inflation.inflated}};
  return j.dump(2);
}

AnalysisReport report_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  AnalysisReport rep;
  rep.schema_version = j.at("schema_version").get<std::string>();
  rep.data.n = j.at("data").at("n").get<std::int64_t>();
  rep.data.zero_count = j.at("data").at("zero_count").get<std::int64_t>();
  rep.data.total = j.at("data").at("total").get<std::int64_t>();
  rep.data.zero_pct = j.at("data").at("zero_pct").get<double>();
  rep.gamma_bayes = j.at("gamma_bayes").get<double>();
  rep.mode = eval_mode_from_name(j.at("mode").get<std::string>());
  rep.fits.clear();
  for (const json& f : j.at("fits")) rep.fits.push_back(fit_from_json(f));
  for (const json& e : j.at("bayes_factors")) {
    BfSummary b;
    b.comparison = comparison_from_name(e.at("comparison").get<std::string>());
    b.log_bf = decode_log_value(e.at("log_bf"));
    b.interpretation =
        evidence_from_name(e.at("interpretation").get<std::string>());
    b.degenerate_all_zero = e.at("degenerate_all_zero").get<bool>();
    if (!e.at("composed_log_bf").is_null()) {
      b.composed_log_bf = decode_log_value(e["composed_log_bf"]);
    }
    rep.bayes_factors.push_back(b);
  }
  for (const json& e : j.at("vuong")) {
    VuongSummary v;
    v.comparison = comparison_from_name(e.at("comparison").get<std::string>());
    v.available = e.at("available").get<bool>();
    v.z = e.at("z").get<double>();
    v.n_effective = e.at("n_effective").get<std::int64_t>();
    v.preferred = e.at("preferred").get<std::string>();
    v.message = e.at("message").get<std::string>();
    rep.vuong.push_back(v);
  }
  rep.inflation.ratio = j.at("inflation").at("ratio").get<double>();
  rep.inflation.inflated = j.at("inflation").at("inflated").get<bool>();
  return rep;
}

void print_report(const AnalysisReport& rep, std::ostream& out) {
  out << "data: n=" << rep.data.n << " zeros=" << rep.data.zero_count << " ("
      << std::setprecision(4) << rep.data.zero_pct << "%)"
      << " total=" << rep.data.total << "\n";
  out << "gamma_bayes=" << rep.gamma_bayes
      << " mode=" << eval_mode_name(rep.mode) << "\n\n";
  out << "fits (AIC = 2k - 2 loglik):\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const FitSummary& f : rep.fits) {
    out << "  " << family_name(f.family) << ": ";
    if (!f.message.empty() && !f.loglik) {
      out << f.message << "\n";
      continue;
    }
    for (const auto& [name, value] : f.estimates) {
      out << name << "=" << value << " ";
    }
    out << "loglik=" << *f.loglik << " aic=" << *f.aic;
    if (!f.converged) out << "  [" << f.message << "]";
    if (f.at_boundary) out << "  [boundary]";
    out << "\n";
  }
  out << "\nlog Bayes factors:\n";
  for (const BfSummary& b : rep.bayes_factors) {
    out << "  " << comparison_name(b.comparison) << ": log_bf=" << b.log_bf
        << "  (" << evidence_description(b.interpretation, b.comparison)
        << ")";
    if (b.degenerate_all_zero) out << "  [all-zero degenerate]";
    if (b.composed_log_bf) out << "  composed=" << *b.composed_log_bf;
    out << "\n";
  }
  out << "\nVuong tests:\n";
  for (const VuongSummary& v : rep.vuong) {
    out << "  " << comparison_name(v.comparison) << ": ";
    if (!v.available) {
      out << "unavailable (" << v.message << ")\n";
    } else {
      out << "z=" << v.z << " preferred=" << v.preferred << "\n";
    }
  }
  out << "\nzero inflation check: ratio=" << rep.inflation.ratio
      << " inflated=" << (rep.inflation.inflated ? "yes" : "no") << "\n";
}

}  // namespace zibayes
