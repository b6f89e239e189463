#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace eipld {

/// A validated sample: positive values, stored sorted, with a provenance
/// label. Ties are allowed (real repair-time data has many).
class Dataset {
public:
    Dataset(std::vector<double> values, std::string label);

    const Eigen::ArrayXd& values() const { return values_; }
    const std::string& label() const { return label_; }
    Eigen::Index n() const { return values_.size(); }

private:
    Eigen::ArrayXd values_;
    std::string label_;
};

/// Reads one numeric value per line from `path`, or returns the embedded
/// dataset for the literal token "builtin:repair-times". A single leading
/// non-numeric line is treated as a header and skipped; any other parse
/// failure reports its line number. Values must be positive.
Dataset ingest(const std::string& path_or_builtin);

/// The classic 40-point active repair times (hours) for an airborne
/// communication transceiver.
const Dataset& builtin_repair_times();

}  // namespace eipld
