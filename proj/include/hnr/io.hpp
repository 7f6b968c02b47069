#pragma once

// JSON / CSV serialization for field specs, matrices, range sets and fibers.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hnr/errors.hpp"
#include "hnr/fields.hpp"
#include "hnr/hermitian.hpp"
#include "hnr/ranges.hpp"

namespace hnr::io {

using json = nlohmann::ordered_json;

inline json to_json(const FieldSpec& s) {
  json ext = json::array();
  for (const auto& c : s.ext_modulus) ext.push_back(c);
  return {{"p", s.p}, {"m", s.m}, {"base_modulus", s.base_modulus}, {"ext_modulus", ext}};
}

namespace detail {

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("malformed field '") + key + "'");
  }
}

}  // namespace detail

// Accepts the full form or the (p, m) shorthand, which selects canonical moduli.
inline FieldSpec field_spec_from_json(const json& j) {
  const auto p = detail::get_field<std::uint32_t>(j, "p");
  const auto m = detail::get_field<unsigned>(j, "m");
  if (!j.contains("base_modulus") && !j.contains("ext_modulus")) return canonical_field_spec(p, m);
  FieldSpec s;
  s.p = p;
  s.m = m;
  s.base_modulus = detail::get_field<PolyFp>(j, "base_modulus");
  const auto ext = detail::get_field<std::vector<PolyFp>>(j, "ext_modulus");
  if (ext.size() != 3) throw InputError("ext_modulus needs three coefficient lists");
  for (std::size_t i = 0; i < 3; ++i) s.ext_modulus[i] = ext[i];
  return s;
}

struct MatrixFile {
  FieldSpec field;
  Matrix matrix;
};

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.n(); ++j) row.push_back(m(i, j).enc);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const MatrixFile& f) {
  return {{"field", to_json(f.field)}, {"n", f.matrix.n()}, {"entries", matrix_to_json(f.matrix)}};
}

inline Matrix matrix_from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw InputError("empty matrix");
  std::vector<Elem> e;
  for (const auto& r : rows) {
    if (r.size() != n) throw InputError("matrix must be square");
    for (auto x : r) e.push_back(Elem{x});
  }
  return Matrix(n, std::move(e));
}

inline MatrixFile matrix_file_from_json(const json& j) {
  MatrixFile out{field_spec_from_json(detail::get_field<json>(j, "field")), Matrix(1)};
  const auto n = detail::get_field<std::size_t>(j, "n");
  out.matrix = matrix_from_rows(detail::get_field<std::vector<std::vector<std::uint32_t>>>(j, "entries"));
  if (out.matrix.n() != n) throw InputError("n does not match the entries");
  return out;
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "a,b;c,d" -> rows of encodings.
inline Matrix parse_inline_matrix(const std::string& text) {
  std::vector<std::vector<std::uint32_t>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<std::uint32_t> r;
    std::stringstream cs(row);
    std::string cell;
    while (std::getline(cs, cell, ',')) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(cell, &used);
      } catch (const std::exception&) {
        throw InputError("bad matrix entry '" + cell + "'");
      }
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size() || v > 0xffffffffUL) throw InputError("bad matrix entry '" + cell + "'");
      r.push_back(static_cast<std::uint32_t>(v));
    }
    rows.push_back(std::move(r));
  }
  return matrix_from_rows(rows);
}

inline json to_json(const FieldCtx& ctx, const RangeSet& r) {
  json vals = json::array(), polys = json::array();
  for (Elem v : r.values) {
    vals.push_back(v.enc);
    polys.push_back(ctx.to_string(v));
  }
  return {{"kind", to_string(r.kind)}, {"k", r.k.enc},           {"mode", to_string(r.mode)},
          {"size", r.size()},          {"witness_count", r.witness_count}, {"values", vals},
          {"values_poly", polys}};
}

inline std::string to_csv(const FieldCtx& ctx, const RangeSet& r) {
  std::string out = "kind,k_enc,value_enc,value_poly,mode\n";
  for (Elem v : r.values) {
    out += std::string(to_string(r.kind)) + "," + std::to_string(r.k.enc) + "," + std::to_string(v.enc) + "," +
           ctx.to_string(v) + "," + std::string(to_string(r.mode)) + "\n";
  }
  return out;
}

inline json to_json(const std::vector<FiberCount>& table) {
  json rows = json::array();
  std::uint64_t total = 0;
  for (const auto& f : table) {
    rows.push_back({{"value", f.value.enc}, {"count", f.count}});
    total += f.count;
  }
  return {{"fibers", rows}, {"total", total}};
}

inline std::string to_csv(const std::vector<FiberCount>& table) {
  std::string out = "value_enc,count\n";
  for (const auto& f : table) out += std::to_string(f.value.enc) + "," + std::to_string(f.count) + "\n";
  return out;
}

}  // namespace hnr::io
