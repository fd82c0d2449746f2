#pragma once

#include <string>
#include <vector>

#include "warpmcf/counterexample.hpp"
#include "warpmcf/monitors.hpp"

namespace warpmcf {

/// One CSV per monitor: header row, then (t, measured, bound, margin) with
/// 17-significant-digit decimals in time order. The margin column is the
/// stored bound - measured, re-derivable from the other two.
void write_timeseries(const BoundReport& report, const std::string& path);

void write_counterexample_series(const std::vector<CounterexampleSample>& series,
                                 const std::string& path);

}  // namespace warpmcf
