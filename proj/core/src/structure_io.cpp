#include "specdec/structure_io.hpp"

#include <fstream>
#include <sstream>

namespace specdec {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

long as_int(const std::string& tok, const std::string& context) {
  try {
    size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer for " + context + ", got '" + tok + "'");
  }
}

}  // namespace

CatalogEntry parse_definition(std::istream& in, const std::string& source_name) {
  CatalogEntry entry;
  FractalStructure& s = entry.structure;
  std::vector<std::pair<int, std::vector<int>>> cell_lines;
  std::string line;
  int lineno = 0;
  bool saw_r_num = false, saw_r_den = false;
  Polynomial r_num, r_den;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> t = tokens(line);
    if (t.empty()) continue;
    const std::string& key = t[0];
    auto want = [&](size_t n) {
      if (t.size() != n + 1) {
        throw ConfigError(source_name + ":" + std::to_string(lineno) + ": '" + key + "' expects " +
                          std::to_string(n) + " value(s)");
      }
    };
    if (key == "name") {
      want(1);
      s.name = t[1];
    } else if (key == "num_cells") {
      want(1);
      s.num_cells = static_cast<int>(as_int(t[1], key));
    } else if (key == "boundary_size") {
      want(1);
      s.boundary_size = static_cast<int>(as_int(t[1], key));
    } else if (key == "v1_size") {
      want(1);
      s.v1_size = static_cast<int>(as_int(t[1], key));
    } else if (key == "v0_embedding") {
      s.v0_embedding.clear();
      for (size_t i = 1; i < t.size(); ++i) s.v0_embedding.push_back(static_cast<int>(as_int(t[i], key)));
    } else if (key == "cell_map") {
      if (t.size() < 3) {
        throw ConfigError(source_name + ":" + std::to_string(lineno) + ": cell_map needs an index and entries");
      }
      int idx = static_cast<int>(as_int(t[1], key));
      std::vector<int> entries;
      for (size_t i = 2; i < t.size(); ++i) entries.push_back(static_cast<int>(as_int(t[i], key)));
      cell_lines.emplace_back(idx, std::move(entries));
    } else if (key == "expected_r_num" || key == "expected_r_den") {
      std::vector<Rational> coeffs;
      for (size_t i = 1; i < t.size(); ++i) coeffs.push_back(rational_from_string(t[i]));
      Polynomial p = Polynomial::from_coeffs(std::move(coeffs));
      if (key == "expected_r_num") {
        r_num = p;
        saw_r_num = true;
      } else {
        r_den = p;
        saw_r_den = true;
      }
    } else if (key == "expected_c_delta") {
      want(1);
      entry.expected.c_delta = rational_from_string(t[1]);
    } else if (key == "expected_exceptional") {
      for (size_t i = 1; i < t.size(); ++i) {
        entry.expected.exceptional.push_back(std::stod(t[i]));
      }
    } else if (key == "expected_classification") {
      want(1);
      if (t[1] != "INTERVAL" && t[1] != "TOTALLY_DISCONNECTED") {
        throw ConfigError(source_name + ":" + std::to_string(lineno) +
                          ": classification must be INTERVAL or TOTALLY_DISCONNECTED");
      }
      entry.expected.classification = t[1];
    } else if (key == "expected_gaps") {
      want(1);
      if (t[1] != "true" && t[1] != "false") {
        throw ConfigError(source_name + ":" + std::to_string(lineno) + ": expected_gaps must be true or false");
      }
      entry.expected.has_gaps = (t[1] == "true");
    } else {
      throw ConfigError(source_name + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (saw_r_num) entry.expected.r_num = r_num;
  if (saw_r_den) entry.expected.r_den = r_den;
  s.cell_maps.assign(s.num_cells, {});
  for (auto& [idx, entries] : cell_lines) {
    if (idx < 0 || idx >= s.num_cells) {
      throw ConfigError(source_name + ": cell_map index " + std::to_string(idx) + " out of range");
    }
    s.cell_maps[idx] = std::move(entries);
  }
  s.validate();
  return entry;
}

CatalogEntry load_definition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read fractal definition file: " + path);
  return parse_definition(in, path);
}

std::string write_definition(const CatalogEntry& entry) {
  const FractalStructure& s = entry.structure;
  std::ostringstream os;
  os << "name " << s.name << "\n";
  os << "num_cells " << s.num_cells << "\n";
  os << "boundary_size " << s.boundary_size << "\n";
  os << "v1_size " << s.v1_size << "\n";
  os << "v0_embedding";
  for (int v : s.v0_embedding) os << " " << v;
  os << "\n";
  for (int j = 0; j < s.num_cells; ++j) {
    os << "cell_map " << j;
    for (int v : s.cell_maps[j]) os << " " << v;
    os << "\n";
  }
  auto coeff_line = [&os](const char* key, const Polynomial& p) {
    os << key;
    if (p.is_zero()) {
      os << " 0";
    } else {
      for (const Rational& c : p.coeffs()) os << " " << rational_to_string(c);
    }
    os << "\n";
  };
  if (entry.expected.r_num) coeff_line("expected_r_num", *entry.expected.r_num);
  if (entry.expected.r_den) coeff_line("expected_r_den", *entry.expected.r_den);
  if (entry.expected.c_delta) {
    os << "expected_c_delta " << rational_to_string(*entry.expected.c_delta) << "\n";
  }
  if (!entry.expected.exceptional.empty()) {
    os << "expected_exceptional";
    char buf[32];
    for (double v : entry.expected.exceptional) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      os << " " << buf;
    }
    os << "\n";
  }
  if (entry.expected.classification) {
    os << "expected_classification " << *entry.expected.classification << "\n";
  }
  if (entry.expected.has_gaps) {
    os << "expected_gaps " << (*entry.expected.has_gaps ? "true" : "false") << "\n";
  }
  return os.str();
}

CatalogEntry resolve_fractal(const std::string& name_or_path) {
  if (const CatalogEntry* e = catalog_find(name_or_path)) return *e;
  if (name_or_path.find('/') != std::string::npos || name_or_path.find('.') != std::string::npos) {
    return load_definition_file(name_or_path);
  }
  throw ConfigError("unknown fractal '" + name_or_path + "' (not a catalog name; paths need a '/' or '.')");
}

}  // namespace specdec
