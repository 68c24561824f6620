#ifndef TGP_IO_HPP
#define TGP_IO_HPP

#include "tgp/analysis.hpp"

namespace tgp {

/// Syntax errors (with line/column) and semantic violations of input documents.
class ParseError : public Error {
public:
  using Error::Error;
};

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &text);

Specification parse_spec(const std::string &text);
std::string write_spec(const Specification &s);

Graph parse_model(const std::string &text);
std::string write_model(const Graph &g);

TripleGraph parse_triple(const std::string &text);
std::string write_triple(const TripleGraph &t);

struct RuleDocument {
  Direction direction = Direction::Forward;
  std::vector<TGGRule> rules;
  bool operator==(const RuleDocument &) const = default;
};

RuleDocument parse_rules(const std::string &text);
std::string write_rules(const RuleDocument &d);

SatisfactionReport parse_report(const std::string &text);
std::string write_report(const SatisfactionReport &r);
std::string report_text(const SatisfactionReport &r);

std::vector<AnnotatedPattern> parse_annotated(const std::string &text);
std::string write_annotated(const std::vector<AnnotatedPattern> &patterns);

std::string write_analysis(const AnalysisReport &r);
std::string write_trace(const Trace &t);

Direction parse_direction(const std::string &s);

} // namespace tgp

#endif // TGP_IO_HPP
