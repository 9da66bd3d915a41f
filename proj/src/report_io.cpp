#include "wglab/report_io.hpp"

#include <sstream>

#include "json.hpp"

namespace wglab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string estimate_csv_header() {
  return "schema,estimate_id,lhs,rhs,ratio,degenerate,params";
}

namespace {

std::string joined_params(const std::map<std::string, double>& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ';';
    s += k + "=" + format_double(v);
  }
  return s;
}

} // namespace

std::string estimate_csv_row(const EstimateReport& r) {
  std::ostringstream os;
  os << kCsvSchema << ',' << to_string(r.estimate_id) << ',' << format_double(r.lhs) << ','
     << format_double(r.rhs) << ',' << format_double(r.ratio) << ',' << (r.degenerate ? 1 : 0)
     << ',' << joined_params(r.params);
  return os.str();
}

std::string estimate_json_line(const EstimateReport& r) {
  nlohmann::json j;
  j["schema"] = kCsvSchema;
  j["estimate_id"] = to_string(r.estimate_id);
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["degenerate"] = r.degenerate;
  j["params"] = r.params;
  return j.dump();
}

std::string measure_csv_header() {
  return "schema,variant,lambda,M,theta,N1,N2,tau,mu,eta,measure,bound,ratio";
}

std::string measure_csv_row(const MeasureSweepRow& r) {
  const MeasureQuery& q = r.query;
  std::ostringstream os;
  os << kCsvSchema << ',' << to_string(q.variant) << ',' << format_double(q.lambda) << ','
     << format_double(q.M) << ',' << format_double(q.theta) << ',' << format_double(q.N1.N)
     << ',' << format_double(q.N2.N) << ',' << format_double(q.tau) << ','
     << format_double(q.xi.mu) << ',' << format_double(q.xi.eta) << ','
     << format_double(r.value) << ',' << format_double(r.bound) << ','
     << format_double(r.ratio);
  return os.str();
}

std::string measure_json_line(const MeasureSweepRow& r) {
  const MeasureQuery& q = r.query;
  nlohmann::json j;
  j["schema"] = kCsvSchema;
  j["variant"] = to_string(q.variant);
  j["lambda"] = q.lambda;
  j["M"] = q.M;
  j["theta"] = q.theta;
  j["N1"] = q.N1.N;
  j["N2"] = q.N2.N;
  j["tau"] = q.tau;
  j["mu"] = q.xi.mu;
  j["eta"] = q.xi.eta;
  if (q.sectors) j["sectors"] = {q.sectors->first, q.sectors->second};
  j["measure"] = r.value;
  j["bound"] = r.bound;
  j["ratio"] = r.ratio;
  return j.dump();
}

} // namespace wglab
