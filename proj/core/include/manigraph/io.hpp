#pragma once

#include "manigraph/clustering.hpp"
#include "manigraph/graph.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace manigraph {

/// Shortest decimal form with 17 significant digits (round-trips exactly).
std::string format_double(double v);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::uint64_t fnv1a64(std::string_view text);
/// Digest of a file's bytes. Throws InputError if unreadable.
std::uint64_t file_digest(const std::filesystem::path& path);
std::string hex_digest(std::uint64_t digest);

/// Comma-separated reals, one sample per row; `header` skips the first line.
FeatureMatrix read_feature_csv(std::istream& in, bool header = false);
FeatureMatrix load_feature_csv(const std::filesystem::path& path, bool header = false);

/// Header `node,c1,...,cK`, then one row per node.
void write_embedding_csv(std::ostream& out, const Eigen::MatrixXd& coords);
Eigen::MatrixXd read_embedding_csv(std::istream& in);
Eigen::MatrixXd load_embedding_csv(const std::filesystem::path& path);

/// Header `node,label`.
void write_labels_csv(std::ostream& out, const ClusterLabels& labels);
/// Reads `node,label` rows; nodes must be exactly 0..N-1 in any order.
ClusterLabels read_labels_csv(std::istream& in);
ClusterLabels load_labels_csv(const std::filesystem::path& path);

}  // namespace manigraph
