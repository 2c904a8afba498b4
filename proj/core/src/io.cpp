#include "mlcc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "mlcc/subset_pool.hpp"

namespace mlcc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc{} && result.ptr == end && !field.empty();
}

[[noreturn]] void fail_line(const std::filesystem::path& path, std::size_t line_no,
                            const std::string& message) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " +
                           message);
}

int parse_label_field(const std::filesystem::path& path, std::size_t line_no,
                      std::string_view field) {
  double value = 0.0;
  if (!parse_double(field, value)) {
    fail_line(path, line_no, "label value '" + std::string(field) + "' is not numeric");
  }
  if (value == 0.0) return 0;
  if (value == 1.0) return 1;
  fail_line(path, line_no,
            "label value '" + std::string(field) + "' is not 0 or 1");
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, int label_count) {
  if (label_count < 1) {
    throw std::invalid_argument("load_csv: label_count must be >= 1");
  }
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_csv: cannot open " + path.string());
  }

  std::vector<std::vector<double>> feature_rows;
  std::vector<LabelVector> label_rows;
  std::vector<std::string> header_names;
  Index columns = -1;

  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) {
      if (first_content_line) continue;  // leading blank lines
      // blank lines are only tolerated at the end of the file
      std::string rest;
      while (std::getline(in, rest)) {
        ++line_no;
        if (!trim(rest).empty()) {
          fail_line(path, line_no, "blank line inside data section");
        }
      }
      break;
    }
    const std::vector<std::string_view> fields = split_fields(view);

    if (first_content_line) {
      first_content_line = false;
      // Header auto-detection: a first line with any non-numeric field.
      bool numeric = true;
      for (const std::string_view f : fields) {
        double ignored;
        if (!parse_double(f, ignored)) {
          numeric = false;
          break;
        }
      }
      if (!numeric) {
        for (const std::string_view f : fields) header_names.emplace_back(f);
        columns = static_cast<Index>(fields.size());
        continue;
      }
    }

    if (columns == -1) {
      columns = static_cast<Index>(fields.size());
    } else if (static_cast<Index>(fields.size()) != columns) {
      fail_line(path, line_no,
                "expected " + std::to_string(columns) + " fields, found " +
                    std::to_string(fields.size()));
    }
    if (columns <= static_cast<Index>(label_count)) {
      fail_line(path, line_no,
                "row has " + std::to_string(columns) + " fields but " +
                    std::to_string(label_count) +
                    " labels were requested (need at least one feature)");
    }

    const std::size_t d = static_cast<std::size_t>(columns) -
                          static_cast<std::size_t>(label_count);
    std::vector<double> features(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (!parse_double(fields[j], features[j])) {
        fail_line(path, line_no,
                  "feature value '" + std::string(fields[j]) + "' is not numeric");
      }
      if (!std::isfinite(features[j])) {
        fail_line(path, line_no, "feature value is not finite");
      }
    }
    LabelVector labels(static_cast<std::size_t>(label_count));
    for (int j = 0; j < label_count; ++j) {
      labels[static_cast<std::size_t>(j)] =
          parse_label_field(path, line_no, fields[d + static_cast<std::size_t>(j)]);
    }
    feature_rows.push_back(std::move(features));
    label_rows.push_back(std::move(labels));
  }

  if (feature_rows.empty()) {
    throw std::runtime_error("load_csv: " + path.string() + " has no data rows");
  }

  const Index n = static_cast<Index>(feature_rows.size());
  const Index d = static_cast<Index>(feature_rows.front().size());
  Matrix features(n, d);
  LabelMatrix labels(n, static_cast<Index>(label_count));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) {
      features(i, j) = feature_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    for (Index j = 0; j < label_count; ++j) {
      labels(i, j) = label_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }

  std::vector<std::string> label_names;
  if (!header_names.empty()) {
    label_names.assign(header_names.end() - label_count, header_names.end());
  }
  return make_dataset(std::move(features), std::move(labels), std::move(label_names));
}

void save_csv(const Dataset& data, const std::filesystem::path& path, bool header) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_csv: cannot open " + path.string() + " for writing");
  }

  char buffer[64];
  const auto write_double = [&](double v) {
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
    out.write(buffer, result.ptr - buffer);
  };

  if (header) {
    for (Index j = 0; j < data.feature_dim(); ++j) {
      out << "f" << j << ',';
    }
    for (Index j = 0; j < data.label_dim(); ++j) {
      out << data.label_names[static_cast<std::size_t>(j)];
      out << (j + 1 < data.label_dim() ? ',' : '\n');
    }
  }
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < data.feature_dim(); ++j) {
      write_double(data.features(i, j));
      out << ',';
    }
    for (Index j = 0; j < data.label_dim(); ++j) {
      out << data.labels(i, j);
      out << (j + 1 < data.label_dim() ? ',' : '\n');
    }
  }
  if (!out) {
    throw std::runtime_error("save_csv: write to " + path.string() + " failed");
  }
}

namespace {

enum class ArffType { kNumeric, kBinaryNominal };

struct ArffAttribute {
  std::string name;
  ArffType type;
};

// Attribute names may be quoted with single or double quotes.
std::string_view take_name(std::string_view rest) {
  rest = trim(rest);
  if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
    const char quote = rest.front();
    const std::size_t close = rest.find(quote, 1);
    if (close != std::string_view::npos) {
      return rest.substr(1, close - 1);
    }
  }
  const std::size_t space = rest.find_first_of(" \t");
  return space == std::string_view::npos ? rest : rest.substr(0, space);
}

std::string_view after_name(std::string_view rest) {
  rest = trim(rest);
  if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
    const std::size_t close = rest.find(rest.front(), 1);
    if (close != std::string_view::npos) {
      return trim(rest.substr(close + 1));
    }
  }
  const std::size_t space = rest.find_first_of(" \t");
  return space == std::string_view::npos ? std::string_view{}
                                         : trim(rest.substr(space + 1));
}

bool is_binary_nominal(std::string_view type) {
  if (type.empty() || type.front() != '{' || type.back() != '}') return false;
  const std::vector<std::string_view> values =
      split_fields(type.substr(1, type.size() - 2));
  if (values.size() != 2) return false;
  const bool has0 = values[0] == "0" || values[1] == "0";
  const bool has1 = values[0] == "1" || values[1] == "1";
  return has0 && has1;
}

}  // namespace

Dataset load_arff(const std::filesystem::path& path, int label_count,
                  LabelPosition labels_at) {
  if (label_count < 1) {
    throw std::invalid_argument("load_arff: label_count must be >= 1");
  }
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_arff: cannot open " + path.string());
  }

  std::vector<ArffAttribute> attributes;
  std::vector<std::vector<double>> rows;
  bool in_data = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '%') continue;

    if (!in_data && view.front() == '@') {
      const std::size_t space = view.find_first_of(" \t");
      const std::string keyword =
          lower(view.substr(0, space == std::string_view::npos ? view.size() : space));
      if (keyword == "@relation") continue;
      if (keyword == "@data") {
        in_data = true;
        continue;
      }
      if (keyword == "@attribute") {
        const std::string_view rest = trim(view.substr(space));
        const std::string_view name = take_name(rest);
        const std::string_view type_text = after_name(rest);
        const std::string type_lower = lower(type_text);
        ArffAttribute attribute;
        attribute.name = std::string(name);
        if (type_lower == "numeric" || type_lower == "real" ||
            type_lower == "integer") {
          attribute.type = ArffType::kNumeric;
        } else if (is_binary_nominal(type_text)) {
          attribute.type = ArffType::kBinaryNominal;
        } else {
          fail_line(path, line_no,
                    "unsupported attribute type '" + std::string(type_text) +
                        "' (only numeric and {0,1} nominal attributes are supported)");
        }
        attributes.push_back(std::move(attribute));
        continue;
      }
      fail_line(path, line_no, "unknown ARFF declaration '" + keyword + "'");
    }

    if (!in_data) {
      fail_line(path, line_no, "data line before @data section");
    }
    if (view.front() == '{') {
      fail_line(path, line_no, "sparse format unsupported");
    }
    const std::vector<std::string_view> fields = split_fields(view);
    if (fields.size() != attributes.size()) {
      fail_line(path, line_no,
                "expected " + std::to_string(attributes.size()) + " values, found " +
                    std::to_string(fields.size()));
    }
    std::vector<double> values(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (fields[j] == "?") {
        fail_line(path, line_no, "missing values unsupported");
      }
      if (!parse_double(fields[j], values[j]) || !std::isfinite(values[j])) {
        fail_line(path, line_no,
                  "value '" + std::string(fields[j]) + "' is not a finite number");
      }
      if (attributes[j].type == ArffType::kBinaryNominal && values[j] != 0.0 &&
          values[j] != 1.0) {
        fail_line(path, line_no,
                  "nominal value '" + std::string(fields[j]) + "' is not 0 or 1");
      }
    }
    rows.push_back(std::move(values));
  }

  if (attributes.size() <= static_cast<std::size_t>(label_count)) {
    throw std::runtime_error("load_arff: " + path.string() + " declares " +
                             std::to_string(attributes.size()) +
                             " attributes, which leaves no features for " +
                             std::to_string(label_count) + " labels");
  }
  if (rows.empty()) {
    throw std::runtime_error("load_arff: " + path.string() + " has no data rows");
  }

  const std::size_t total = attributes.size();
  const std::size_t m = static_cast<std::size_t>(label_count);
  const std::size_t d = total - m;
  const std::size_t label_begin = (labels_at == LabelPosition::kFront) ? 0 : d;
  const std::size_t feature_begin = (labels_at == LabelPosition::kFront) ? m : 0;

  const Index n = static_cast<Index>(rows.size());
  Matrix features(n, static_cast<Index>(d));
  LabelMatrix labels(n, static_cast<Index>(m));
  for (Index i = 0; i < n; ++i) {
    const std::vector<double>& row = rows[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < d; ++j) {
      features(i, static_cast<Index>(j)) = row[feature_begin + j];
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double v = row[label_begin + j];
      if (v != 0.0 && v != 1.0) {
        throw std::runtime_error("load_arff: " + path.string() + ": label attribute '" +
                                 attributes[label_begin + j].name +
                                 "' holds a non-binary value");
      }
      labels(i, static_cast<Index>(j)) = static_cast<int>(v);
    }
  }

  std::vector<std::string> label_names;
  label_names.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    label_names.push_back(attributes[label_begin + j].name);
  }
  return make_dataset(std::move(features), std::move(labels), std::move(label_names));
}

DatasetStats stats(const Dataset& data) {
  DatasetStats out;
  out.n = data.rows();
  out.d = data.feature_dim();
  out.m = data.label_dim();
  double total = 0.0;
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < data.label_dim(); ++j) total += data.labels(i, j);
  }
  out.cardinality = total / static_cast<double>(data.rows());
  const LabelSubsetPool pool = build_subset_pool(data.labels);
  out.distinct_subsets = static_cast<std::int64_t>(pool.size());
  out.observation_rate = pool.observation_rate();
  return out;
}

}  // namespace mlcc
