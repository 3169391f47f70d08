#pragma once

#include <string>

#include "causaldt/problem.hpp"
#include "causaldt/structural.hpp"

namespace causaldt {

/// "table" holds a DecisionProblem; "structural" and "diagram" hold a
/// StructuralModel, validated with validate_structural and validate_diagram
/// respectively.
enum class DocumentKind { table, structural, diagram };

std::string to_string(DocumentKind kind);

struct Document {
  DocumentKind kind = DocumentKind::table;
  DecisionProblem problem;
  StructuralModel model;

  bool is_table() const { return kind == DocumentKind::table; }
};

/// Parses and validates a format_version 1 document. Tables are returned
/// normalized, so omitted states and explicit probability-0 states are the
/// same thing. Decimal probabilities are read exactly from their text.
///
/// Throws ParseError for malformed JSON, SchemaError for documents that do not
/// fit the schema and ValidationError for models that fail validation.
Document parse_document(const std::string& text);

/// parse_document on a file's contents; InputError if it cannot be read.
Document read_document(const std::string& path);

/// Canonical text: sorted keys, two-space indent, rationals as "p/q" strings,
/// states in normalize order, trailing newline.
std::string serialize_problem(const DecisionProblem& problem);
std::string serialize_model(const StructuralModel& model, DocumentKind kind = DocumentKind::structural);
std::string serialize(const Document& document);

}  // namespace causaldt
