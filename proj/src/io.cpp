#include "fpt/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "fpt/error.hpp"
#include "json.hpp"

#ifndef FPT_ORDER_VERSION
#define FPT_ORDER_VERSION "0.0.0"
#endif

namespace fpt {

const char* version() { return FPT_ORDER_VERSION; }

CurveTable CurveTable::from(const SurvivalCurve& curve) {
  return {curve.label, curve.grid.points(), curve.values, {}};
}

CurveTable CurveTable::from(const EmpiricalCurve& curve) {
  return {curve.label, curve.times.points(), curve.estimate, curve.std_err};
}

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw DomainError("format_double: conversion failed");
  return {buf, end};
}

void write_csv(std::ostream& out, const CurveTable& curve) {
  out << (curve.has_std_err() ? "t,value,stderr\n" : "t,value\n");
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    out << format_double(curve.t[i]) << ',' << format_double(curve.value[i]);
    if (curve.has_std_err()) out << ',' << format_double(curve.std_err[i]);
    out << '\n';
  }
}

namespace {

double parse_field(const std::string& text, int line_no) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw DomainError("csv line " + std::to_string(line_no) + ": '" + text +
                      "' is not a number");
  return v;
}

}  // namespace

CurveTable read_csv(std::istream& in) {
  CurveTable table;
  std::string line;
  int line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    if (columns == 0) {
      if (line == "t,value") columns = 2;
      else if (line == "t,value,stderr") columns = 3;
      else throw DomainError("csv: unexpected header '" + line + "'");
      continue;
    }
    if (fields.size() != columns)
      throw DomainError("csv line " + std::to_string(line_no) + ": wrong field count");
    table.t.push_back(parse_field(fields[0], line_no));
    table.value.push_back(parse_field(fields[1], line_no));
    if (columns == 3) table.std_err.push_back(parse_field(fields[2], line_no));
  }
  if (columns == 0) throw DomainError("csv: missing header");
  return table;
}

std::string to_json(const std::string& model, const ParameterList& parameters,
                    const std::vector<CurveTable>& curves) {
  nlohmann::ordered_json doc;
  doc["metadata"]["model"] = model;
  doc["metadata"]["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : parameters) doc["metadata"]["parameters"][key] = value;
  doc["metadata"]["version"] = version();
  doc["curves"] = nlohmann::ordered_json::array();
  for (const auto& c : curves) {
    nlohmann::ordered_json entry;
    entry["label"] = c.label;
    entry["t"] = c.t;
    entry["value"] = c.value;
    if (c.has_std_err()) entry["stderr"] = c.std_err;
    doc["curves"].push_back(entry);
  }
  return doc.dump(2);
}

}  // namespace fpt
