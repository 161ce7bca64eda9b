#include "tenclass/tensor_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tenclass {

namespace {

using nlohmann::json;

std::string index_text(const MultiIndex& idx) {
  std::string s = "[";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0) s += ",";
    s += std::to_string(idx[k]);
  }
  return s + "]";
}

double entry_value(const json& v, const std::string& where) {
  double x = 0.0;
  if (v.is_number()) {
    x = v.get<double>();
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw std::invalid_argument("entry " + where + ": value \"" + s + "\" is not a number");
    }
  } else {
    throw std::invalid_argument("entry " + where + ": value must be a number");
  }
  if (!std::isfinite(x)) {
    throw std::invalid_argument("entry " + where + ": non-finite value");
  }
  return x;
}

Index get_index(const json& v, Index dim, const std::string& where) {
  if (!v.is_number_integer()) {
    throw std::invalid_argument("entry " + where + ": indices must be integers");
  }
  const auto i = v.get<long long>();
  if (i < 0 || static_cast<unsigned long long>(i) >= dim) {
    throw std::invalid_argument("entry " + where + ": index " + std::to_string(i) +
                                " out of range for dimension " + std::to_string(dim));
  }
  return static_cast<Index>(i);
}

void read_dense(const json& node, int depth, int order, Index dim, MultiIndex& idx,
                std::vector<double>& out) {
  if (depth == order) {
    out.push_back(entry_value(node, index_text(idx)));
    return;
  }
  if (!node.is_array() || node.size() != dim) {
    throw std::invalid_argument("dense entries: expected an array of length " +
                                std::to_string(dim) + " at depth " + std::to_string(depth));
  }
  for (Index i = 0; i < dim; ++i) {
    idx.push_back(i);
    read_dense(node[i], depth + 1, order, dim, idx, out);
    idx.pop_back();
  }
}

}  // namespace

json parse_json_lenient(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 16);
  bool in_string = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (in_string) {
      out += c;
      if (c == '\\' && k + 1 < text.size()) {
        out += text[++k];
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out += c;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
        (c == '-' && k + 1 < text.size() &&
         (std::isdigit(static_cast<unsigned char>(text[k + 1])) || text[k + 1] == '.'))) {
      std::size_t end = k + 1;
      while (end < text.size() &&
             std::string_view("0123456789.eE+-").find(text[end]) != std::string_view::npos) {
        ++end;
      }
      out.append(text.substr(k, end - k));
      k = end - 1;
      continue;
    }
    const bool sign = (c == '-' || c == '+') && k + 1 < text.size() &&
                      std::isalpha(static_cast<unsigned char>(text[k + 1]));
    if (sign || std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = k + (sign ? 1 : 0);
      while (end < text.size() && std::isalpha(static_cast<unsigned char>(text[end]))) ++end;
      const std::string_view word = text.substr(k, end - k);
      if (word == "true" || word == "false" || word == "null") {
        out.append(word);
      } else {
        out += '"';
        out.append(word);
        out += '"';
      }
      k = end - 1;
      continue;
    }
    out += c;
  }
  try {
    return json::parse(out);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

Tensor tensor_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("tensor document must be a JSON object");
  if (!doc.contains("order") || !doc["order"].is_number_integer()) {
    throw std::invalid_argument("missing integer field \"order\"");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw std::invalid_argument("missing integer field \"dim\"");
  }
  const auto order = doc["order"].get<long long>();
  const auto dim = doc["dim"].get<long long>();
  if (order < 2 || order > 16) throw std::invalid_argument("order must be between 2 and 16");
  if (dim < 1 || dim > 64) throw std::invalid_argument("dim must be between 1 and 64");
  const std::string format = doc.value("format", std::string("coo"));
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw std::invalid_argument("missing array field \"entries\"");
  }
  const json& entries = doc["entries"];
  const int m = static_cast<int>(order);
  const auto n = static_cast<Index>(dim);
  if (format == "dense") {
    std::vector<double> values;
    MultiIndex idx;
    read_dense(entries, 0, m, n, idx, values);
    return Tensor(m, n, std::move(values));
  }
  if (format != "coo") throw std::invalid_argument("unknown format \"" + format + "\"");
  std::vector<std::pair<MultiIndex, double>> coo;
  std::set<MultiIndex> seen;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const json& item = entries[e];
    const std::string pos = "#" + std::to_string(e);
    if (!item.is_array() || item.size() != 2 || !item[0].is_array()) {
      throw std::invalid_argument("entry " + pos + ": expected [[i1,...,im], value]");
    }
    if (item[0].size() != static_cast<std::size_t>(m)) {
      throw std::invalid_argument("entry " + pos + ": expected " + std::to_string(m) + " indices");
    }
    MultiIndex idx;
    for (const auto& v : item[0]) idx.push_back(get_index(v, n, pos));
    const std::string where = index_text(idx);
    if (!seen.insert(idx).second) {
      throw std::invalid_argument("entry " + where + ": duplicate index");
    }
    coo.emplace_back(idx, entry_value(item[1], where));
  }
  return Tensor::from_coo(m, n, coo);
}

Tensor parse_tensor(std::string_view text) { return tensor_from_json(parse_json_lenient(text)); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Tensor load_tensor(const std::filesystem::path& path) { return parse_tensor(read_file(path)); }

json tensor_to_json(const Tensor& a) {
  json entries = json::array();
  for (Index lin = 0; lin < a.size(); ++lin) {
    const double v = a.entries()[lin];
    if (v == 0.0) continue;
    entries.push_back(json::array({a.multi_index(lin), v}));
  }
  return json{{"order", a.order()}, {"dim", a.dim()}, {"format", "coo"}, {"entries", entries}};
}

std::string tensor_to_string(const Tensor& a) { return tensor_to_json(a).dump(); }

void save_tensor(const std::filesystem::path& path, const Tensor& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << tensor_to_json(a).dump(2) << '\n';
}

}  // namespace tenclass
