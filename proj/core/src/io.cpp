// Copyright 2026 The beew Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "beew/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace beew {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trimmed(const std::string& line) {
  std::string s = line;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_two_numbers(const std::string& line, double& a, double& b) {
  std::string t = line;
  for (char& c : t)
    if (c == ',' || c == ';' || c == '\t') c = ' ';
  std::istringstream is(t);
  std::string extra;
  if (!(is >> a >> b)) return false;
  if (is >> extra) return false;
  return true;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Dataset parse_dataset(const std::string& text, double rescale, std::string source) {
  if (!(std::isfinite(rescale) && rescale > 0.0))
    throw DatasetError("rescale factor must be finite and > 0");
  Dataset ds;
  ds.source = std::move(source);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trimmed(line);
    if (body.empty()) continue;
    double a = 0.0, b = 0.0;
    if (!parse_two_numbers(body, a, b)) {
      if (!seen_data && !ds.had_header) {
        ds.had_header = true;  // non-numeric first row is a header
        continue;
      }
      throw DatasetError("line " + std::to_string(lineno) +
                         ": expected two numeric columns");
    }
    seen_data = true;
    a *= rescale;
    b *= rescale;
    if (!(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0))
      throw DatasetError("line " + std::to_string(lineno) +
                         ": values must be finite and > 0 after rescale");
    ds.rows.emplace_back(a, b);
  }
  return ds;
}

Dataset read_dataset(const std::string& path, double rescale) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), rescale, path);
}

std::string format_dataset(std::span<const std::pair<double, double>> rows) {
  std::string out = "x1,x2\n";
  for (const auto& [a, b] : rows) {
    out += fmt_double(a);
    out += ',';
    out += fmt_double(b);
    out += '\n';
  }
  return out;
}

void write_dataset(const std::string& path,
                   std::span<const std::pair<double, double>> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError("cannot write '" + path + "'");
  out << format_dataset(rows);
}

namespace {

// NaN and infinities have no JSON literal; nlohmann would emit null for
// them, which from_json could not distinguish. Encode doubles as values
// plus an explicit marker for the non-finite cases.
ordered_json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double get_num(const ordered_json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    throw std::runtime_error("report: bad numeric string '" + s + "'");
  }
  return j.get<double>();
}

template <typename T>
void put_opt(ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

void put_opt_num(ordered_json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = num(*v);
}

template <typename T>
void get_opt(const ordered_json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

void get_opt_num(const ordered_json& j, const char* key, std::optional<double>& v) {
  if (j.contains(key)) v = get_num(j.at(key));
}

ordered_json to_tree(const ReportDocument& r) {
  ordered_json j;
  j["schema"] = "beew-report-v1";
  j["command"] = r.command;
  j["model"] = r.model;
  put_opt(j, "data_path", r.data_path);
  put_opt(j, "n", r.n);
  put_opt(j, "n0", r.n0);
  put_opt(j, "n1", r.n1);
  put_opt(j, "n2", r.n2);
  put_opt_num(j, "tie_eps", r.tie_eps);
  put_opt_num(j, "rescale", r.rescale);
  if (!r.param_names.empty()) {
    j["param_names"] = r.param_names;
    ordered_json est = ordered_json::array();
    for (double v : r.estimates) est.push_back(num(v));
    j["estimates"] = est;
    if (!r.se.empty()) {
      ordered_json se = ordered_json::array();
      for (double v : r.se) se.push_back(num(v));
      j["se"] = se;
    }
  }
  put_opt_num(j, "loglik", r.loglik);
  put_opt(j, "k", r.k);
  put_opt_num(j, "aic", r.aic);
  put_opt_num(j, "aicc", r.aicc);
  put_opt_num(j, "bic", r.bic);
  if (!r.ks.empty()) {
    ordered_json arr = ordered_json::array();
    for (const KsEntry& e : r.ks) {
      ordered_json je;
      je["target"] = e.target;
      je["statistic"] = num(e.statistic);
      je["p_value"] = num(e.p_value);
      arr.push_back(je);
    }
    j["ks"] = arr;
  }
  if (r.lrt) {
    ordered_json je;
    je["statistic"] = num(r.lrt->statistic);
    je["df"] = r.lrt->df;
    je["p_value"] = num(r.lrt->p_value);
    j["lrt"] = je;
  }
  put_opt(j, "iterations", r.iterations);
  put_opt(j, "converged", r.converged);
  put_opt_num(j, "loglik_initial", r.loglik_initial);
  if (!r.flags.empty()) j["flags"] = r.flags;
  put_opt(j, "seed", r.seed);
  put_opt(j, "rng_version", r.rng_version);
  put_opt(j, "out_path", r.out_path);
  put_opt_num(j, "x1", r.x1);
  put_opt_num(j, "x2", r.x2);
  put_opt_num(j, "value", r.value);
  put_opt(j, "what", r.what);
  put_opt(j, "region", r.region);
  if (!r.fits.empty()) {
    ordered_json arr = ordered_json::array();
    for (const ReportDocument& f : r.fits) arr.push_back(to_tree(f));
    j["fits"] = arr;
  }
  return j;
}

ReportDocument from_tree(const ordered_json& j) {
  ReportDocument r;
  r.command = j.at("command").get<std::string>();
  r.model = j.at("model").get<std::string>();
  get_opt(j, "data_path", r.data_path);
  get_opt(j, "n", r.n);
  get_opt(j, "n0", r.n0);
  get_opt(j, "n1", r.n1);
  get_opt(j, "n2", r.n2);
  get_opt_num(j, "tie_eps", r.tie_eps);
  get_opt_num(j, "rescale", r.rescale);
  if (j.contains("param_names")) {
    r.param_names = j.at("param_names").get<std::vector<std::string>>();
    for (const auto& v : j.at("estimates")) r.estimates.push_back(get_num(v));
    if (j.contains("se"))
      for (const auto& v : j.at("se")) r.se.push_back(get_num(v));
  }
  get_opt_num(j, "loglik", r.loglik);
  get_opt(j, "k", r.k);
  get_opt_num(j, "aic", r.aic);
  get_opt_num(j, "aicc", r.aicc);
  get_opt_num(j, "bic", r.bic);
  if (j.contains("ks")) {
    for (const auto& je : j.at("ks")) {
      KsEntry e;
      e.target = je.at("target").get<std::string>();
      e.statistic = get_num(je.at("statistic"));
      e.p_value = get_num(je.at("p_value"));
      r.ks.push_back(std::move(e));
    }
  }
  if (j.contains("lrt")) {
    LrtEntry e;
    e.statistic = get_num(j.at("lrt").at("statistic"));
    e.df = j.at("lrt").at("df").get<int>();
    e.p_value = get_num(j.at("lrt").at("p_value"));
    r.lrt = e;
  }
  get_opt(j, "iterations", r.iterations);
  get_opt(j, "converged", r.converged);
  get_opt_num(j, "loglik_initial", r.loglik_initial);
  if (j.contains("flags")) r.flags = j.at("flags").get<std::vector<std::string>>();
  get_opt(j, "seed", r.seed);
  get_opt(j, "rng_version", r.rng_version);
  get_opt(j, "out_path", r.out_path);
  get_opt_num(j, "x1", r.x1);
  get_opt_num(j, "x2", r.x2);
  get_opt_num(j, "value", r.value);
  get_opt(j, "what", r.what);
  get_opt(j, "region", r.region);
  if (j.contains("fits"))
    for (const auto& je : j.at("fits")) r.fits.push_back(from_tree(je));
  return r;
}

bool num_eq(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

bool vec_eq(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!num_eq(a[i], b[i])) return false;
  return true;
}

bool opt_eq(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || num_eq(*a, *b);
}

}  // namespace

std::string ReportDocument::to_json() const { return to_tree(*this).dump(2) + "\n"; }

ReportDocument ReportDocument::from_json(const std::string& text) {
  return from_tree(ordered_json::parse(text));
}

bool operator==(const ReportDocument& a, const ReportDocument& b) {
  auto ks_eq = [](const std::vector<KsEntry>& x, const std::vector<KsEntry>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].target != y[i].target || !num_eq(x[i].statistic, y[i].statistic) ||
          !num_eq(x[i].p_value, y[i].p_value))
        return false;
    return true;
  };
  const bool lrt_same =
      a.lrt.has_value() == b.lrt.has_value() &&
      (!a.lrt || (num_eq(a.lrt->statistic, b.lrt->statistic) &&
                  a.lrt->df == b.lrt->df && num_eq(a.lrt->p_value, b.lrt->p_value)));
  return a.command == b.command && a.model == b.model && a.data_path == b.data_path &&
         a.n == b.n && a.n0 == b.n0 && a.n1 == b.n1 && a.n2 == b.n2 &&
         opt_eq(a.tie_eps, b.tie_eps) && opt_eq(a.rescale, b.rescale) &&
         a.param_names == b.param_names && vec_eq(a.estimates, b.estimates) &&
         vec_eq(a.se, b.se) && opt_eq(a.loglik, b.loglik) && a.k == b.k &&
         opt_eq(a.aic, b.aic) && opt_eq(a.aicc, b.aicc) && opt_eq(a.bic, b.bic) &&
         ks_eq(a.ks, b.ks) && lrt_same && a.iterations == b.iterations &&
         a.converged == b.converged && opt_eq(a.loglik_initial, b.loglik_initial) &&
         a.flags == b.flags && a.seed == b.seed && a.rng_version == b.rng_version &&
         a.out_path == b.out_path && opt_eq(a.x1, b.x1) && opt_eq(a.x2, b.x2) &&
         opt_eq(a.value, b.value) && a.what == b.what && a.region == b.region &&
         a.fits == b.fits;
}

}  // namespace beew
