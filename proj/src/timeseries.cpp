#include "warpmcf/timeseries.hpp"

#include <cstdio>
#include <stdexcept>

namespace warpmcf {

namespace {

struct File {
  std::FILE* f;
  explicit File(const std::string& path) : f(std::fopen(path.c_str(), "w")) {
    if (!f) throw std::runtime_error("cannot write time series: " + path);
  }
  ~File() {
    if (f) std::fclose(f);
  }
  File(const File&) = delete;
  File& operator=(const File&) = delete;
};

}  // namespace

void write_timeseries(const BoundReport& report, const std::string& path) {
  File out(path);
  std::fprintf(out.f, "t,measured,bound,margin\n");
  for (const BoundSample& s : report.series)
    std::fprintf(out.f, "%.17g,%.17g,%.17g,%.17g\n", s.t, s.measured, s.bound, s.margin);
}

void write_counterexample_series(const std::vector<CounterexampleSample>& series,
                                 const std::string& path) {
  File out(path);
  std::fprintf(out.f, "t,sup_v_eq,sup_v_geo,min_sigma_geo\n");
  for (const CounterexampleSample& s : series)
    std::fprintf(out.f, "%.17g,%.17g,%.17g,%.17g\n", s.t, s.sup_v_eq, s.sup_v_geo,
                 s.min_sigma_geo);
}

}  // namespace warpmcf
