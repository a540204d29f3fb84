#pragma once

#include <fstream>
#include <optional>
#include <string>

#include "ginls/conserved.hpp"
#include "ginls/field.hpp"
#include "ginls/lab/config.hpp"
#include "ginls/zhidkov.hpp"

namespace ginls {
namespace lab {

// Streaming CSV time series. Columns, in order:
//   t, E1, E2, H1, H2, [H2_inls,] mass, linf, seam_gap, dx2norm
// (the H2_inls column is present only in the integrable regime). Header lines
// are '#'-prefixed and carry the config echo; rows are flushed as written so
// aborted runs leave a valid truncated file.
class TimeSeriesWriter {
public:
    TimeSeriesWriter(const std::string& path, const RunConfig& cfg, bool integrable);
    void row(const FieldState& f, const ModelParams& p);

private:
    std::ofstream out_;
    bool integrable_;
};

// Snapshot: one structured-text header line followed by raw little-endian
// 64-bit (re, im) pairs in grid order.
void write_snapshot(const std::string& path, const FieldState& f, const ModelParams& p);

struct Snapshot {
    FieldState field;
    ModelParams params;
};
Snapshot read_snapshot(const std::string& path);

}  // namespace lab
}  // namespace ginls
