#include "manigraph/io.hpp"

#include "manigraph/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace manigraph {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view text) {
  return fnv1a64(std::span(reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

std::uint64_t file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return fnv1a64(bytes);
}

std::string hex_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& field, std::size_t line_no) {
  const std::string t = trim(field);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw InputError("line " + std::to_string(line_no) + ": `" + t + "` is not a number");
  }
  return v;
}

long long parse_int(const std::string& field, std::size_t line_no) {
  const std::string t = trim(field);
  long long v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw InputError("line " + std::to_string(line_no) + ": `" + t + "` is not an integer");
  }
  return v;
}

template <typename Fn>
auto with_file(const std::filesystem::path& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return fn(in);
}

}  // namespace

FeatureMatrix read_feature_csv(std::istream& in, bool header) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (header && line_no == 1) continue;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (cols == 0) cols = fields.size();
    if (fields.size() != cols) {
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) + " fields");
    }
    for (const auto& f : fields) values.push_back(parse_real(f, line_no));
    ++rows;
  }
  return FeatureMatrix(rows, cols, std::move(values));
}

FeatureMatrix load_feature_csv(const std::filesystem::path& path, bool header) {
  return with_file(path, [&](std::istream& in) { return read_feature_csv(in, header); });
}

void write_embedding_csv(std::ostream& out, const Eigen::MatrixXd& coords) {
  out << "node";
  for (Eigen::Index c = 0; c < coords.cols(); ++c) out << ",c" << (c + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    out << i;
    for (Eigen::Index c = 0; c < coords.cols(); ++c) out << ',' << format_double(coords(i, c));
    out << '\n';
  }
}

Eigen::MatrixXd read_embedding_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("embedding CSV is empty");
  const auto head = split_commas(trim(line));
  if (head.size() < 2 || trim(head[0]) != "node") throw InputError("embedding CSV header must be node,c1,...,cK");
  for (std::size_t c = 1; c < head.size(); ++c) {
    if (trim(head[c]) != "c" + std::to_string(c)) throw InputError("embedding CSV header must be node,c1,...,cK");
  }
  const std::size_t k = head.size() - 1;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != k + 1) throw InputError("line " + std::to_string(line_no) + ": wrong field count");
    const long long node = parse_int(fields[0], line_no);
    if (node != static_cast<long long>(rows.size())) {
      throw InputError("line " + std::to_string(line_no) + ": nodes must be listed as 0..N-1");
    }
    std::vector<double> row(k);
    for (std::size_t c = 0; c < k; ++c) row[c] = parse_real(fields[c + 1], line_no);
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
  }
  return m;
}

Eigen::MatrixXd load_embedding_csv(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in) { return read_embedding_csv(in); });
}

void write_labels_csv(std::ostream& out, const ClusterLabels& labels) {
  out << "node,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

ClusterLabels read_labels_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("labels CSV is empty");
  const auto head = split_commas(trim(line));
  if (head.size() != 2 || trim(head[0]) != "node" || trim(head[1]) != "label") {
    throw InputError("labels CSV header must be node,label");
  }
  std::vector<std::pair<long long, long long>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != 2) throw InputError("line " + std::to_string(line_no) + ": expected node,label");
    rows.emplace_back(parse_int(fields[0], line_no), parse_int(fields[1], line_no));
  }
  std::vector<long long> ids(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [node, label] : rows) {
    if (node < 0 || static_cast<std::size_t>(node) >= rows.size() || seen[static_cast<std::size_t>(node)]) {
      throw InputError("labels CSV must list each node 0..N-1 exactly once");
    }
    seen[static_cast<std::size_t>(node)] = true;
    ids[static_cast<std::size_t>(node)] = label;
  }
  if (ids.empty()) throw InputError("labels CSV has no rows");
  return ClusterLabels::from_ids(ids);
}

ClusterLabels load_labels_csv(const std::filesystem::path& path) {
  return with_file(path, [](std::istream& in) { return read_labels_csv(in); });
}

}  // namespace manigraph
