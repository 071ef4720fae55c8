#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfforge/catalog.hpp"

namespace hopfforge::io {

inline constexpr const char* kFormat = "hopfforge-sc 1";

struct Row {
  std::vector<std::size_t> idx;
  Cyc v;
};

struct Section {
  std::string name;  // "MULT", "GROUPLIKE g", ...
  std::vector<Row> rows;

  std::string kind() const { return name.substr(0, name.find(' ')); }
  std::string tag() const {
    auto p = name.find(' ');
    return p == std::string::npos ? std::string() : name.substr(p + 1);
  }
};

inline std::size_t section_arity(const std::string& kind) {
  if (kind == "MULT" || kind == "COMULT" || kind == "ACTION" || kind == "COACTION" || kind == "XI") return 3;
  if (kind == "ANTIPODE" || kind == "MATRIX") return 2;
  if (kind == "UNIT" || kind == "COUNIT" || kind == "GROUPLIKE" || kind == "CHARACTER") return 1;
  throw Error(ErrorCode::ParseError, "unknown section '" + kind + "'");
}

// One structure per file: header lines, then sparse sections.
struct AlgebraFile {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<Section> sections;

  std::optional<std::string> get(const std::string& key) const {
    for (const auto& [k, v] : header)
      if (k == key) return v;
    return std::nullopt;
  }
  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw Error(ErrorCode::ParseError, "missing header '" + key + "'");
    return *v;
  }
  std::size_t require_size(const std::string& key) const {
    std::string v = require(key);
    try {
      std::size_t used = 0;
      unsigned long long n = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "header '" + key + "' is not a size: " + v);
    }
  }
  void set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : header)
      if (k == key) {
        v = value;
        return;
      }
    header.emplace_back(key, value);
  }
  Section& add_section(const std::string& name) {
    section_arity(name.substr(0, name.find(' ')));
    sections.push_back(Section{name, {}});
    return sections.back();
  }
  const Section* section(const std::string& name) const {
    for (const auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
  const Section& require_section(const std::string& name) const {
    const Section* s = section(name);
    if (!s) throw Error(ErrorCode::ParseError, "missing section " + name);
    return *s;
  }
  int conductor() const {
    int L = 1;
    for (const auto& s : sections)
      for (const auto& r : s.rows)
        if (!r.v.is_rational()) L = std::lcm(L, r.v.conductor());
    return L;
  }
  std::string kind() const { return require("kind"); }
};

inline std::string print(const AlgebraFile& f) {
  const int L = f.conductor();
  std::ostringstream os;
  os << "# format: " << kFormat << "\n";
  os << "# conductor: " << L << "\n";
  for (const auto& [k, v] : f.header) {
    if (k == "format" || k == "conductor") continue;
    os << "# " << k << ": " << v << "\n";
  }
  for (const auto& s : f.sections) {
    os << "SECTION " << s.name << "\n";
    for (const auto& r : s.rows) {
      for (std::size_t i : r.idx) os << i << " ";
      os << r.v.format(r.v.is_rational() ? r.v.conductor() : L) << "\n";
    }
  }
  return os.str();
}

inline AlgebraFile parse(const std::string& text) {
  AlgebraFile f;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  int L = 0;
  Section* cur = nullptr;
  std::size_t arity = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[0] == '#') {
      if (cur) fail("header line after first section");
      auto colon = line.find(':');
      if (colon == std::string::npos) fail("header without ':'");
      std::string key = line.substr(1, colon - 1), value = line.substr(colon + 1);
      auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      key = trim(key);
      value = trim(value);
      if (key == "format" && value != kFormat) fail("unsupported format '" + value + "'");
      if (key == "conductor") {
        try {
          L = std::stoi(value);
        } catch (const std::exception&) {
          fail("bad conductor");
        }
        if (L < 1) fail("bad conductor");
        if (L > conductor_cap()) throw Error(ErrorCode::ConductorOverflow, "conductor " + value + " exceeds cap");
      }
      f.header.emplace_back(key, value);
      continue;
    }
    if (line.rfind("SECTION ", 0) == 0) {
      if (L == 0) fail("missing conductor header");
      std::string name = line.substr(8);
      try {
        arity = section_arity(name.substr(0, name.find(' ')));
      } catch (const Error& e) {
        fail(e.what());
      }
      f.sections.push_back(Section{name, {}});
      cur = &f.sections.back();
      continue;
    }
    if (!cur) fail("data row outside a section");
    std::istringstream row(line);
    Row r;
    for (std::size_t a = 0; a < arity; ++a) {
      std::string tok;
      if (!(row >> tok) || tok.find_first_not_of("0123456789") != std::string::npos) fail("expected index");
      r.idx.push_back(static_cast<std::size_t>(std::stoull(tok)));
    }
    std::string rest;
    std::getline(row, rest);
    try {
      r.v = parse_cyc(rest, L);
    } catch (const Error& e) {
      fail(e.what());
    }
    cur->rows.push_back(std::move(r));
  }
  if (!f.get("format")) throw Error(ErrorCode::ParseError, "missing format header");
  if (L == 0) throw Error(ErrorCode::ParseError, "missing conductor header");
  return f;
}

namespace detail {

inline void tensor_rows(Section& s, const Tensor3& t) {
  for (const auto& e : t.entries()) s.rows.push_back(Row{{e.i, e.j, e.k}, e.v});
}
inline void sparse_rows(Section& s, const SparseVec& v) {
  for (const auto& [i, c] : v) s.rows.push_back(Row{{i}, c});
}
inline void dense_rows(Section& s, const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.rows.push_back(Row{{i}, v[i]});
}
inline void matrix_rows(Section& s, const Mat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) s.rows.push_back(Row{{i, j}, m(i, j)});
}

inline Tensor3 tensor_of(const Section& s, std::size_t n1, std::size_t n2, std::size_t n3) {
  Tensor3::Builder b(n1, n2, n3);
  for (const auto& r : s.rows) b.add(r.idx[0], r.idx[1], r.idx[2], r.v);
  return b.build();
}
inline void check_index(std::size_t i, std::size_t n, const std::string& where) {
  if (i >= n) throw Error(ErrorCode::ShapeMismatch, where + ": index " + std::to_string(i) + " out of range");
}
inline SparseVec sparse_of(const Section& s, std::size_t n) {
  Accum acc;
  for (const auto& r : s.rows) {
    check_index(r.idx[0], n, s.name);
    acc.add(r.idx[0], r.v);
  }
  return acc.finish();
}
inline Vec dense_of(const Section& s, std::size_t n) {
  Vec v = zero_vec(n);
  for (const auto& r : s.rows) {
    check_index(r.idx[0], n, s.name);
    v[r.idx[0]] += r.v;
  }
  return v;
}
inline Mat matrix_of(const Section& s, std::size_t rows, std::size_t cols) {
  Mat m(rows, cols);
  for (const auto& r : s.rows) {
    check_index(r.idx[0], rows, s.name);
    check_index(r.idx[1], cols, s.name);
    m(r.idx[0], r.idx[1]) += r.v;
  }
  return m;
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}
inline std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}
inline std::string labels_header(const std::vector<std::string>& labels) {
  for (const auto& l : labels)
    if (l.empty() || std::any_of(l.begin(), l.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
      throw Error(ErrorCode::ShapeMismatch, "basis label '" + l + "' cannot be serialized");
  return join(labels);
}
inline std::vector<std::string> labels_of(const AlgebraFile& f, std::size_t dim) {
  auto l = split(f.get("labels").value_or(""));
  if (l.empty()) return default_labels(dim);
  if (l.size() != dim) throw Error(ErrorCode::ShapeMismatch, "label count differs from dimension");
  return l;
}
inline void expect_kind(const AlgebraFile& f, const std::string& kind) {
  if (f.kind() != kind) throw Error(ErrorCode::ParseError, "expected a " + kind + " file, found " + f.kind());
}

}  // namespace detail

inline AlgebraFile to_file(const HopfSC& H) {
  AlgebraFile f;
  f.set("kind", "hopf");
  f.set("name", H.name);
  f.set("dim", std::to_string(H.dim()));
  f.set("labels", detail::labels_header(H.labels.empty() ? default_labels(H.dim()) : H.labels));
  f.set("flags", std::string("finite_dim=") + (H.flags.finite_dim ? "1" : "0") +
                     " cosemisimple=" + (H.flags.cosemisimple ? "1" : "0"));
  std::vector<std::string> gl, ch;
  for (const auto& [n, g] : H.grouplikes) gl.push_back(n);
  for (const auto& [n, c] : H.characters) ch.push_back(n);
  f.set("grouplikes", detail::join(gl));
  f.set("characters", detail::join(ch));
  detail::tensor_rows(f.add_section("MULT"), H.algebra.mult);
  detail::tensor_rows(f.add_section("COMULT"), H.coalgebra.comult);
  detail::sparse_rows(f.add_section("UNIT"), H.algebra.unit);
  detail::dense_rows(f.add_section("COUNIT"), H.coalgebra.counit);
  if (H.antipode) detail::matrix_rows(f.add_section("ANTIPODE"), *H.antipode);
  for (const auto& [n, g] : H.grouplikes) detail::sparse_rows(f.add_section("GROUPLIKE " + n), g);
  for (const auto& [n, c] : H.characters) detail::dense_rows(f.add_section("CHARACTER " + n), c);
  return f;
}

inline HopfSC hopf_from(const AlgebraFile& f) {
  detail::expect_kind(f, "hopf");
  HopfSC H;
  const std::size_t n = f.require_size("dim");
  H.name = f.get("name").value_or("");
  H.labels = detail::labels_of(f, n);
  H.algebra = AlgebraSC{n, detail::tensor_of(f.require_section("MULT"), n, n, n),
                        detail::sparse_of(f.require_section("UNIT"), n)};
  H.coalgebra = CoalgebraSC{n, detail::tensor_of(f.require_section("COMULT"), n, n, n),
                            detail::dense_of(f.require_section("COUNIT"), n)};
  if (const Section* s = f.section("ANTIPODE")) H.antipode = detail::matrix_of(*s, n, n);
  for (const auto& w : detail::split(f.get("flags").value_or(""))) {
    auto eq = w.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "bad flag " + w);
    std::string k = w.substr(0, eq), v = w.substr(eq + 1);
    if (v != "0" && v != "1") throw Error(ErrorCode::ParseError, "bad flag value " + w);
    if (k == "finite_dim")
      H.flags.finite_dim = v == "1";
    else if (k == "cosemisimple")
      H.flags.cosemisimple = v == "1";
    else
      throw Error(ErrorCode::ParseError, "unknown flag " + k);
  }
  for (const auto& g : detail::split(f.get("grouplikes").value_or("")))
    H.grouplikes[g] = detail::sparse_of(f.require_section("GROUPLIKE " + g), n);
  for (const auto& c : detail::split(f.get("characters").value_or("")))
    H.characters[c] = detail::dense_of(f.require_section("CHARACTER " + c), n);
  return H;
}

inline AlgebraFile to_file(const PreBialgebra& P, const std::string& base_ref) {
  AlgebraFile f;
  f.set("kind", "prebialgebra");
  f.set("name", P.name);
  f.set("base", base_ref);
  f.set("dim", std::to_string(P.dim()));
  f.set("base_dim", std::to_string(P.H().dim()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < P.dim(); ++i) labels.push_back(P.label(i));
  f.set("labels", detail::labels_header(labels));
  detail::tensor_rows(f.add_section("MULT"), P.mult);
  detail::tensor_rows(f.add_section("COMULT"), P.comult);
  detail::sparse_rows(f.add_section("UNIT"), P.unit);
  detail::dense_rows(f.add_section("COUNIT"), P.counit);
  detail::tensor_rows(f.add_section("ACTION"), P.yd.action);
  detail::tensor_rows(f.add_section("COACTION"), P.yd.coaction);
  return f;
}

inline PreBialgebra prebialgebra_from(const AlgebraFile& f, std::shared_ptr<const HopfSC> H) {
  detail::expect_kind(f, "prebialgebra");
  const std::size_t m = f.require_size("dim"), n = H->dim();
  if (f.get("base_dim") && f.require_size("base_dim") != n)
    throw Error(ErrorCode::ShapeMismatch, "base Hopf algebra has the wrong dimension");
  PreBialgebra P;
  P.name = f.get("name").value_or("");
  P.yd.base = std::move(H);
  P.yd.dim = m;
  P.yd.labels = detail::labels_of(f, m);
  P.yd.action = detail::tensor_of(f.require_section("ACTION"), n, m, m);
  P.yd.coaction = detail::tensor_of(f.require_section("COACTION"), m, n, m);
  P.mult = detail::tensor_of(f.require_section("MULT"), m, m, m);
  P.comult = detail::tensor_of(f.require_section("COMULT"), m, m, m);
  P.unit = detail::sparse_of(f.require_section("UNIT"), m);
  P.counit = detail::dense_of(f.require_section("COUNIT"), m);
  return P;
}

inline AlgebraFile to_file(const Cocycle& xi, const std::string& carrier_ref) {
  AlgebraFile f;
  f.set("kind", "cocycle");
  f.set("carrier", carrier_ref);
  f.set("dim", std::to_string(xi.xi.n1()));
  f.set("base_dim", std::to_string(xi.xi.n3()));
  detail::tensor_rows(f.add_section("XI"), xi.xi);
  return f;
}

inline Cocycle cocycle_from(const AlgebraFile& f, const PreBialgebra& P) {
  detail::expect_kind(f, "cocycle");
  const std::size_t m = f.require_size("dim"), n = f.require_size("base_dim");
  if (m != P.dim() || n != P.H().dim()) throw Error(ErrorCode::ShapeMismatch, "cocycle shape differs from its carrier");
  return Cocycle{detail::tensor_of(f.require_section("XI"), m, m, n)};
}

inline AlgebraFile to_file(const Mat& M, const std::string& source_ref, const std::string& target_ref) {
  AlgebraFile f;
  f.set("kind", "map");
  f.set("source", source_ref);
  f.set("target", target_ref);
  f.set("rows", std::to_string(M.rows()));
  f.set("cols", std::to_string(M.cols()));
  detail::matrix_rows(f.add_section("MATRIX"), M);
  return f;
}

inline Mat map_from(const AlgebraFile& f) {
  detail::expect_kind(f, "map");
  return detail::matrix_of(f.require_section("MATRIX"), f.require_size("rows"), f.require_size("cols"));
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline AlgebraFile read_file(const std::filesystem::path& p) {
  try {
    return parse(read_text(p));
  } catch (const Error& e) {
    throw Error(e.code(), p.string() + ": " + e.what());
  }
}

// References are relative to the referencing file's directory.
inline std::filesystem::path resolve(const std::filesystem::path& from, const std::string& ref) {
  std::filesystem::path r(ref);
  return r.is_absolute() ? r : from.parent_path() / r;
}

inline std::shared_ptr<const HopfSC> load_hopf(const std::filesystem::path& p) {
  return std::make_shared<const HopfSC>(hopf_from(read_file(p)));
}

inline PreBialgebra load_prebialgebra(const std::filesystem::path& p) {
  AlgebraFile f = read_file(p);
  return prebialgebra_from(f, load_hopf(resolve(p, f.require("base"))));
}

inline Mat load_map(const std::filesystem::path& p, std::size_t rows, std::size_t cols) {
  Mat M = map_from(read_file(p));
  if (M.rows() != rows || M.cols() != cols)
    throw Error(ErrorCode::ShapeMismatch, p.string() + ": map has shape " + std::to_string(M.rows()) + "x" +
                                              std::to_string(M.cols()) + ", expected " + std::to_string(rows) + "x" +
                                              std::to_string(cols));
  return M;
}

}  // namespace hopfforge::io

namespace hopfforge::cli {

// Status lines plus a key-value block; exit code 0 iff there is no FAIL line.
class Report {
 public:
  struct Line {
    std::string status, name, detail;
  };

  void pass(const std::string& name, const std::string& detail = {}) { lines_.push_back({"PASS", name, detail}); }
  void fail(const std::string& name, const std::string& detail = {}) { lines_.push_back({"FAIL", name, detail}); }
  void skip(const std::string& name, const std::string& reason) { lines_.push_back({"SKIPPED", name, reason}); }
  void info(const std::string& name, const std::string& detail) { lines_.push_back({"INFO", name, detail}); }
  void check(const std::string& name, bool ok, const std::string& detail = {}) { ok ? pass(name, detail) : fail(name, detail); }
  void note(const std::string& n) { notes_.push_back(n); }
  void put(const std::string& key, const std::string& value) { kv_.emplace_back(key, value); }
  void put(const std::string& key, const char* value) { put(key, std::string(value)); }
  void put(const std::string& key, bool value) { put(key, std::string(value ? "true" : "false")); }

  void add(const CheckReport& rep, const std::string& prefix) {
    for (const auto& it : rep.items()) {
      std::string d;
      for (std::size_t w = 0; w < std::min<std::size_t>(3, it.witnesses.size()); ++w)
        d += (d.empty() ? "" : "; ") + it.witnesses[w];
      if (!it.passed && it.violations > 3) d += "; ... " + std::to_string(it.violations) + " violations";
      if (!it.note.empty()) d += (d.empty() ? "" : " ") + std::string("[") + it.note + "]";
      if (it.informative)
        info(prefix + it.name, std::string(it.passed ? "yes" : "no") + (d.empty() ? "" : " " + d));
      else
        check(prefix + it.name, it.passed, d);
    }
  }

  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<std::pair<std::string, std::string>>& kv() const { return kv_; }
  std::optional<std::string> value(const std::string& key) const {
    for (const auto& [k, v] : kv_)
      if (k == key) return v;
    return std::nullopt;
  }
  bool failed() const {
    return std::any_of(lines_.begin(), lines_.end(), [](const Line& l) { return l.status == "FAIL"; });
  }
  int exit_code() const { return failed() ? 1 : 0; }

  std::string text() const {
    std::ostringstream os;
    for (const auto& l : lines_) {
      os << l.status << " " << l.name;
      if (!l.detail.empty()) os << ": " << l.detail;
      os << "\n";
    }
    for (const auto& n : notes_) os << "NOTE " << n << "\n";
    os << "BEGIN KV\n";
    for (const auto& [k, v] : kv_) os << k << " = " << v << "\n";
    os << "END KV\n";
    return os.str();
  }

 private:
  std::vector<Line> lines_;
  std::vector<std::pair<std::string, std::string>> kv_;
  std::vector<std::string> notes_;
};

inline std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  bool inside = false;
  for (std::string line; std::getline(in, line);) {
    if (line == "BEGIN KV") {
      inside = true;
    } else if (line == "END KV") {
      inside = false;
    } else if (inside) {
      auto eq = line.find(" = ");
      if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 3);
    }
  }
  return out;
}

struct Output {
  std::vector<std::pair<std::string, std::string>> files;  // relative path, contents
  Report report;
};

inline void write_outputs(const Output& out, const std::filesystem::path& dir) {
  for (const auto& [rel, text] : out.files) {
    std::filesystem::path p = dir / rel;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + p.string());
    f << text;
  }
}

namespace detail {

// Non-rational values name their root of unity, e.g. "z (z = zeta_6)".
inline std::string zeta_suffix(int L) { return L > 1 ? " (z = zeta_" + std::to_string(L) + ")" : std::string(); }
inline std::string fmt(const Cyc& c) {
  return c.format(c.conductor()) + zeta_suffix(c.is_rational() ? 1 : c.conductor());
}
inline std::string fmt(const SparseVec& v, const std::vector<std::string>& labels) {
  int L = 1;
  for (const auto& [i, c] : v)
    if (!c.is_rational()) L = std::lcm(L, c.conductor());
  return format_element(v, labels, L) + zeta_suffix(L);
}

inline bool is_parse_error(ErrorCode c) {
  return c == ErrorCode::ParseError || c == ErrorCode::ShapeMismatch || c == ErrorCode::ConductorOverflow;
}

inline void check_hopf_into(Report& r, const HopfSC& H, const std::string& prefix) {
  if (H.antipode)
    r.add(check_hopf(H), prefix);
  else
    r.add(check_bialgebra(H), prefix);
  for (const auto& [n, g] : H.grouplikes) r.check(prefix + "grouplike:" + n, verify_group_like(H, g));
  for (const auto& [n, c] : H.characters) r.check(prefix + "character:" + n, verify_character(H, c));
}

inline std::string relative_ref(const std::filesystem::path& target, const std::filesystem::path& from_dir) {
  std::error_code ec;
  auto rel = std::filesystem::relative(std::filesystem::absolute(target), std::filesystem::absolute(from_dir), ec);
  return (ec || rel.empty() ? std::filesystem::absolute(target) : rel).generic_string();
}

inline std::string bits(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}

}  // namespace detail

inline Report cmd_check(const std::filesystem::path& path) {
  Report r;
  io::AlgebraFile f = io::read_file(path);
  const std::string kind = f.kind();
  r.put("kind", kind);
  if (kind == "hopf") {
    HopfSC H = io::hopf_from(f);
    r.put("name", H.name);
    r.put("dim", std::to_string(H.dim()));
    detail::check_hopf_into(r, H, "");
  } else if (kind == "prebialgebra") {
    PreBialgebra P = io::prebialgebra_from(f, io::load_hopf(io::resolve(path, f.require("base"))));
    r.put("dim", std::to_string(P.dim()));
    r.add(check_yd(P.yd), "yd.");
    r.add(check_prebialgebra(P), "pre.");
  } else if (kind == "cocycle") {
    PreBialgebra P = io::load_prebialgebra(io::resolve(path, f.require("carrier")));
    Cocycle xi = io::cocycle_from(f, P);
    r.put("dim", std::to_string(P.dim()));
    r.add(check_cocycle(P, xi), "cocycle.");
  } else if (kind == "map") {
    Mat M = io::map_from(f);
    r.put("rows", std::to_string(M.rows()));
    r.put("cols", std::to_string(M.cols()));
    auto src = io::load_hopf(io::resolve(path, f.require("source")));
    auto tgt = io::load_hopf(io::resolve(path, f.require("target")));
    r.check("shape", src->dim() == M.cols() && tgt->dim() == M.rows());
    if (src->dim() == M.cols() && tgt->dim() == M.rows()) {
      const std::size_t n = src->dim();
      bool coalg = true, alg = M.apply(src->algebra.unit) == tgt->algebra.unit;
      for (std::size_t a = 0; a < n; ++a) {
        SparseVec ma = M.column(a);
        coalg = coalg && apply_tensor(M, M, comultiply(src->coalgebra, a), n) == comultiply(tgt->coalgebra, ma) &&
                evaluate(tgt->coalgebra.counit, ma) == src->coalgebra.counit[a];
        for (std::size_t b = 0; alg && b < n; ++b)
          alg = M.apply(multiply(src->algebra, a, b)) == multiply(tgt->algebra, ma, M.column(b));
      }
      r.info("coalgebra_map", coalg ? "yes" : "no");
      r.info("algebra_map", alg ? "yes" : "no");
    }
  } else {
    throw Error(ErrorCode::ParseError, "unknown kind " + kind);
  }
  return r;
}

inline SparseVec resolve_grouplike(const HopfSC& H, const std::string& spec) {
  if (auto it = H.grouplikes.find(spec); it != H.grouplikes.end()) return it->second;
  for (std::size_t i = 0; i < H.dim(); ++i)
    if (H.label(i) == spec) return basis_vec(i);
  if (!spec.empty() && spec.find_first_not_of("0123456789") == std::string::npos) {
    std::size_t i = std::stoul(spec);
    if (i < H.dim()) return basis_vec(i);
  }
  throw Error(ErrorCode::ParseError, "unknown group-like '" + spec + "'");
}

inline void datum_into(Report& r, const CompatibleDatum& c) {
  const HopfSC& H = *c.d.H;
  r.put("datum.g", detail::fmt(c.d.g, H.labels));
  r.put("datum.q", detail::fmt(c.d.q));
  r.put("datum.N", std::to_string(c.d.N));
  r.put("datum.lambda", detail::fmt(c.lambda));
}

// Builds O(H, g, chi, lambda) from the Hopf algebra file at `base`.
inline Output cmd_ore(const std::filesystem::path& base, const std::string& g, const std::string& chi, const std::string& lambda,
                      std::optional<int> N, const std::string& stem, const std::filesystem::path& out_dir) {
  Output out;
  Report& r = out.report;
  io::AlgebraFile bf = io::read_file(base);
  auto H = std::make_shared<const HopfSC>(io::hopf_from(bf));
  auto ch = H->characters.find(chi);
  if (ch == H->characters.end()) throw Error(ErrorCode::ParseError, "unknown character '" + chi + "'");
  Cyc lam = parse_cyc(lambda, std::lcm(bf.conductor(), std::stoi(bf.require("conductor"))));
  auto d = validate_yd_datum(H, resolve_grouplike(*H, g), ch->second);
  r.add(d.report, "datum.");
  if (!d.ok()) return out;
  if (N) r.check("datum.N", d->N == *N, "order of q is " + std::to_string(d->N));
  auto c = validate_compatible_datum(*d, lam);
  r.add(c.report, "compatible.");
  if (!c.ok()) return out;
  OreHopf O = build_ore_hopf(*c, "y", true);
  O.O.name = stem;
  datum_into(r, *c);
  detail::check_hopf_into(r, O.O, "hopf.");
  r.check("antipode_closed_form", O.O.S() == ore_closed_form_antipode(O));
  r.put("dim", std::to_string(O.O.dim()));
  const std::string base_ref = detail::relative_ref(base, out_dir);
  out.files.emplace_back(stem + ".sc", io::print(io::to_file(O.O)));
  out.files.emplace_back(stem + ".sigma.sc", io::print(io::to_file(O.sigma, base_ref, stem + ".sc")));
  out.files.emplace_back(stem + ".p.sc", io::print(io::to_file(O.p, stem + ".sc", base_ref)));
  return out;
}

inline Output cmd_bosonize(const std::filesystem::path& R_path, const std::filesystem::path& xi_path, const std::string& stem,
                           const std::filesystem::path& out_dir) {
  Output out;
  Report& r = out.report;
  io::AlgebraFile rf = io::read_file(R_path);
  const std::filesystem::path base = io::resolve(R_path, rf.require("base"));
  PreBialgebra P = io::prebialgebra_from(rf, io::load_hopf(base));
  Cocycle xi = io::cocycle_from(io::read_file(xi_path), P);
  CheckReport pre = check_prebialgebra(P), coc = check_cocycle(P, xi);
  r.add(pre, "pre.");
  r.add(coc, "cocycle.");
  if (!pre.ok() || !coc.ok()) return out;
  Bosonization b = bosonize(P, xi, false);
  b.B.name = stem;
  detail::check_hopf_into(r, b.B, "hopf.");
  r.put("dim", std::to_string(b.B.dim()));
  r.put("hopf", b.hopf);
  r.put("radford_majid", is_radford_majid(P, xi));
  const std::string base_ref = detail::relative_ref(base, out_dir);
  out.files.emplace_back(stem + ".sc", io::print(io::to_file(b.B)));
  out.files.emplace_back(stem + ".sigma.sc", io::print(io::to_file(b.sigma, base_ref, stem + ".sc")));
  out.files.emplace_back(stem + ".pi.sc", io::print(io::to_file(b.pi, stem + ".sc", base_ref)));
  return out;
}

// Runs the full projection analysis and records the extracted data.
inline void analysis_into(Report& r, const ProjectionSetup& s) {
  const HopfSC &A = *s.A, &H = *s.H;
  r.put("dim_A", std::to_string(A.dim()));
  r.put("dim_H", std::to_string(H.dim()));
  CheckReport setup = validate_setup(s);
  r.add(setup, "setup.");
  r.put("pi_algebra_map", setup.passed("info:algebra_map"));
  if (!setup.ok()) return;
  FullAnalysis f = analyze(s);
  const InducedPreBialgebra& ind = f.induced;
  std::vector<std::string> rl;
  for (std::size_t a = 0; a < ind.dim(); ++a) rl.push_back(ind.P.label(a));
  r.put("dim_R", std::to_string(ind.dim()));
  r.add(f.prebialgebra, "pre.");
  r.add(f.cocycle, "cocycle.");
  r.add(f.tau_identities, "tau.");
  r.add(f.omega, "omega.");
  for (std::size_t k = 0; k < A.dim(); ++k) {
    SparseVec t = ind.tau.column(k);
    if (t != basis_vec(k)) r.put("tau(" + A.label(k) + ")", detail::fmt(t, A.labels));
  }
  r.put("thin", f.thin.thin);
  if (!f.thin.thin) r.note("not thin: " + f.thin.reason);
  r.add(f.thin.report, "thin.");
  r.put("dim_A1", std::to_string(f.dim_A1));
  r.check("as_criterion", f.as_criterion);
  if (!f.report) return;
  const AnalysisReport& ar = *f.report;
  r.put("N", std::to_string(ar.N));
  r.put("q", detail::fmt(ar.q));
  r.put("g", detail::fmt(ar.g, H.labels));
  for (const auto& [n, gl] : H.grouplikes) r.put("chi(" + n + ")", detail::fmt(evaluate(ar.chi, gl)));
  r.put("x", detail::fmt(ar.x, H.labels));
  r.put("lambdaN", ar.lambdaN ? detail::fmt(*ar.lambdaN) : std::string("undefined"));
  r.put("colinear", ar.colinear);
  const CocycleAnalysis& ca = *f.cocycle_lines;
  r.add(ca.report, "lines.");
  if (f.coaction_identities) r.add(*f.coaction_identities, "coaction.");
  for (std::size_t a = 0; a < ca.ytable.size(); ++a)
    for (std::size_t b = 0; b < ca.ytable[a].size(); ++b)
      if (!ca.ytable[a][b].empty() && a + b > 0)
        r.put("xi(" + power_label("y", a) + "," + power_label("y", b) + ")", detail::fmt(ca.ytable[a][b], H.labels));
  for (const auto& [k, v] : ar.equivalences) r.put("equiv(" + k + ")", v);
  r.put("power_agreement", detail::bits(ar.power_comparison));
  for (const auto& [k, v] : ar.consequences) r.put("consequence(" + k + ")", v);
  r.add(ar.report, "equiv.");
  for (const auto& n : ar.notes) r.note(n);
  try {
    Classification c = classify(s);
    r.pass("classify", "A is isomorphic to O(H, g, chi, lambda)");
    r.put("classify.lambda", detail::fmt(c.datum.lambda));
  } catch (const Error& e) {
    r.skip("classify", e.what());
  }
}

inline Output cmd_analyze(const std::filesystem::path& A_path, const std::filesystem::path& H_path,
                          const std::filesystem::path& sigma_path, const std::filesystem::path& pi_path) {
  Output out;
  auto A = io::load_hopf(A_path);
  auto H = io::load_hopf(H_path);
  Mat sigma = io::load_map(sigma_path, A->dim(), H->dim());
  Mat pi = io::load_map(pi_path, H->dim(), A->dim());
  analysis_into(out.report, ProjectionSetup::make(A, H, sigma, pi));
  return out;
}

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"b0", "xmas", "c4min", "qline6", "smash36"};
  return names;
}

namespace detail {

inline HopfSC with_character(HopfSC H, const std::string& name, const Vec& chi) {
  H.characters[name] = chi;
  return H;
}

inline void ore_files(Output& out, const std::string& dir, const OreHopf& O, const std::string& base, const Mat& pi,
                      const std::string& pi_name) {
  const std::string a = O.O.name + ".sc";
  out.files.emplace_back(dir + "/" + a, io::print(io::to_file(O.O)));
  out.files.emplace_back(dir + "/" + O.O.name + ".sigma.sc", io::print(io::to_file(O.sigma, base, a)));
  out.files.emplace_back(dir + "/" + O.O.name + "." + pi_name + ".sc", io::print(io::to_file(pi, a, base)));
}

inline void relation(Report& r, const HopfSC& A, const std::string& name, const SparseVec& lhs, const SparseVec& rhs) {
  r.check("relation:" + name, lhs == rhs, lhs == rhs ? std::string() : fmt(lhs, A.labels) + " vs " + fmt(rhs, A.labels));
}

}  // namespace detail

// Writes the example's files under <name>/ and runs its check suite.
inline Output cmd_example(const std::string& name) {
  Output out;
  Report& r = out.report;
  r.put("example", name);
  auto mul = [](const HopfSC& A, const SparseVec& a, const SparseVec& b) { return multiply(A.algebra, a, b); };
  if (name == "b0") {
    OreHopf O = catalog::b0();
    const HopfSC& B = O.O;
    HopfSC K = detail::with_character(*O.H, "chi", cyclic_character(6, Cyc(-1)));
    out.files.emplace_back("b0/KC6.sc", io::print(io::to_file(K)));
    out.files.emplace_back("b0/B0.sc", io::print(io::to_file(detail::with_character(B, "chi", catalog::b0_character(Cyc::zeta(6))))));
    detail::check_hopf_into(r, B, "hopf.");
    const SparseVec one = B.algebra.unit, g = basis_vec(1), x = basis_vec(6), g3 = basis_vec(3);
    detail::relation(r, B, "g^6=1", power(B.algebra, g, 6), one);
    detail::relation(r, B, "x^2=0", mul(B, x, x), SparseVec{});
    detail::relation(r, B, "gx+xg=0", mul(B, g, x) + mul(B, x, g), SparseVec{});
    detail::relation(r, B, "Delta(x)", comultiply(B.coalgebra, x), kron(g3, x, 12) + kron(x, one, 12));
    detail::relation(r, B, "S(x)", B.S().apply(x), Cyc(-1) * mul(B, g3, x));
    r.put("dim", std::to_string(B.dim()));
  } else if (name == "xmas") {
    OreHopf O = catalog::xmas();
    const HopfSC& A = O.O;
    const std::size_t n = 12;
    out.files.emplace_back("xmas/B0.sc", io::print(io::to_file(detail::with_character(*O.H, "chi", catalog::b0_character(Cyc::zeta(6))))));
    Mat pi = catalog::xmas_pi(O);
    detail::ore_files(out, "xmas", O, "B0.sc", pi, "pi");
    out.files.emplace_back("xmas/" + A.name + ".p.sc", io::print(io::to_file(O.p, A.name + ".sc", "B0.sc")));
    detail::check_hopf_into(r, A, "hopf.");
    const SparseVec Y = basis_vec(n), G = basis_vec(1), X = basis_vec(6);
    detail::relation(r, A, "Y^6=0", power(A.algebra, Y, 6), SparseVec{});
    detail::relation(r, A, "GY=qYG", mul(A, G, Y), Cyc::zeta(6) * mul(A, Y, G));
    detail::relation(r, A, "XY=-YX", mul(A, X, Y), Cyc(-1) * mul(A, Y, X));
    r.put("dim", std::to_string(A.dim()));
    r.put("pi_equals_p", pi == O.p);
    ProjectionSetup s = ProjectionSetup::from_ore(O);
    s.pi = pi;
    analysis_into(r, s);
  } else if (name == "c4min") {
    OreHopf O = catalog::c4min();
    out.files.emplace_back("c4min/KC4.sc", io::print(io::to_file(detail::with_character(*O.H, "chi", cyclic_character(4, Cyc(-1))))));
    detail::ore_files(out, "c4min", O, "KC4.sc", O.p, "p");
    detail::check_hopf_into(r, O.O, "hopf.");
    r.put("dim", std::to_string(O.O.dim()));
    analysis_into(r, ProjectionSetup::from_ore(O));
  } else if (name == "qline6") {
    QuantumLine L = catalog::qline6();
    out.files.emplace_back("qline6/KC6.sc", io::print(io::to_file(detail::with_character(L.P.H(), "chi", cyclic_character(6, Cyc::zeta(6))))));
    out.files.emplace_back("qline6/Rq6.sc", io::print(io::to_file(L.P, "KC6.sc")));
    r.add(check_yd(L.P.yd), "yd.");
    r.add(check_prebialgebra(L.P), "pre.");
    r.put("braided_hopf", L.braided_hopf);
    r.put("dim", std::to_string(L.P.dim()));
    ThinResult t = thinness_and_basis(L.P);
    r.put("thin", t.thin);
    if (t.basis) {
      r.put("N", std::to_string(t.basis->N));
      r.put("q", detail::fmt(t.basis->q));
    }
  } else if (name == "smash36") {
    QuantumLine L = catalog::qline6();
    Bosonization b = catalog::smash36();
    HopfSC K = detail::with_character(L.P.H(), "chi", cyclic_character(6, Cyc::zeta(6)));
    out.files.emplace_back("smash36/KC6.sc", io::print(io::to_file(K)));
    out.files.emplace_back("smash36/Rq6.sc", io::print(io::to_file(L.P, "KC6.sc")));
    out.files.emplace_back("smash36/Rq6.xi.sc", io::print(io::to_file(trivial_cocycle(L.P), "Rq6.sc")));
    out.files.emplace_back("smash36/Smash36.sc", io::print(io::to_file(b.B)));
    out.files.emplace_back("smash36/Smash36.sigma.sc", io::print(io::to_file(b.sigma, "KC6.sc", "Smash36.sc")));
    out.files.emplace_back("smash36/Smash36.pi.sc", io::print(io::to_file(b.pi, "Smash36.sc", "KC6.sc")));
    detail::check_hopf_into(r, b.B, "hopf.");
    r.put("dim", std::to_string(b.B.dim()));
    r.put("radford_majid", is_radford_majid(L.P, trivial_cocycle(L.P)));
    analysis_into(r, ProjectionSetup::from_bosonization(b, catalog::cyclic(6)));
  } else {
    throw Error(ErrorCode::ParseError, "unknown example '" + name + "'");
  }
  return out;
}

// Prints the report, writes files, and maps errors to exit codes 0/1/2.
inline int finish(const std::function<Output()>& body, const std::optional<std::filesystem::path>& out_dir, std::ostream& out,
                  std::ostream& err, bool print_single_file = false) {
  try {
    Output o = body();
    if (out_dir)
      write_outputs(o, *out_dir);
    else if (print_single_file && !o.files.empty())
      out << o.files.front().second;
    if (!print_single_file || out_dir) out << o.report.text();
    else err << o.report.text();
    return o.report.exit_code();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (detail::is_parse_error(e.code())) return 2;
    Report r;
    r.fail(error_name(e.code()), e.what());
    out << r.text();
    return 1;
  }
}

}  // namespace hopfforge::cli
