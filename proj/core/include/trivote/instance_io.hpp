#pragma once

#include <iosfwd>
#include <string>

#include "trivote/errors.hpp"
#include "trivote/metric_instance.hpp"

namespace trivote {

/// Parses the instance file format.
///
/// The format is line oriented; blank lines and lines starting with '#' are
/// ignored. Header fields come first, in any order, one per line:
///
///   kind: matrix | planar
///   agents: <positive integer>
///   alternatives: <positive integer>
///
/// followed by exactly one data section matching the kind:
///
///   matrix:
///     (agents+alternatives)^2 numbers, row-major, separated by whitespace
///     and/or commas, spanning any number of lines
///   points:
///     2*(agents+alternatives) numbers (x y per entity), agents first
///
/// Parsing is strict: unknown keys, duplicate keys, missing fields, count
/// mismatches, non-finite values, negative distances, asymmetric matrices and
/// nonzero diagonals are all rejected with a ParseError carrying the line
/// number. Matrix instances are additionally validated against the triangle
/// inequality (tolerance 1e-9).
MetricInstance parse_instance(std::istream& in);
MetricInstance parse_instance_string(const std::string& text);
MetricInstance load_instance(const std::string& path);

/// Writes an instance in the same format. Numbers are printed with enough
/// digits (%.17g) that parse(emit(x)) == x bit for bit.
void emit_instance(const MetricInstance& inst, std::ostream& out);
std::string instance_to_string(const MetricInstance& inst);
void save_instance(const MetricInstance& inst, const std::string& path);

}  // namespace trivote
