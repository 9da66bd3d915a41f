#ifndef WGLAB_REPORT_IO_HPP
#define WGLAB_REPORT_IO_HPP

#include <iosfwd>

#include "wglab/bilinear.hpp"
#include "wglab/measure.hpp"

namespace wglab {

// All CSV emitters carry a leading `schema` column; bump kCsvSchema on any
// breaking column change.
inline constexpr int kCsvSchema = 1;

// Estimate reports: stable columns
//   schema,estimate_id,lhs,rhs,ratio,degenerate,params
// where params is a semicolon-joined key=value list in sorted key order.
std::string estimate_csv_header();
std::string estimate_csv_row(const EstimateReport& r);
std::string estimate_json_line(const EstimateReport& r);

// Measure sweep rows: stable columns
//   schema,variant,lambda,M,theta,N1,N2,tau,mu,eta,measure,bound,ratio
std::string measure_csv_header();
std::string measure_csv_row(const MeasureSweepRow& r);
std::string measure_json_line(const MeasureSweepRow& r);

// Canonical float formatting shared by every emitter (shortest round-trip).
std::string format_double(double v);

} // namespace wglab

#endif
