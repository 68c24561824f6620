// tgpc: compile and run pattern-based triple graph transformations.

#include "tgp/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void emit(const std::string &out, const std::string &text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    tgp::write_file(out, text);
}

tgp::Specification load_spec(const std::string &path) { return tgp::parse_spec(tgp::read_file(path)); }

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Compiler and engine for pattern-based model-to-model transformations"};
  app.require_subcommand(1);

  std::string spec, out, direction, model, triple, trace, format = "text";
  std::uint64_t seed = 0;
  bool no_np = false;

  auto *deduce = app.add_subcommand("deduce", "run the deduction pipeline and print annotated patterns");
  deduce->add_option("SPEC", spec, "specification file")->required();
  deduce->add_option("-o,--output", out, "output file (default: stdout)");
  deduce->add_flag("--no-np-deduction", no_np, "skip the reuse (NP/CNP) deductions");

  auto *compile = app.add_subcommand("compile", "compile operational rules");
  compile->add_option("SPEC", spec, "specification file")->required();
  compile->add_option("--direction", direction, "forward or backward")
      ->required()
      ->check(CLI::IsMember({"forward", "backward"}));
  compile->add_option("-o,--output", out, "output file (default: stdout)");
  compile->add_flag("--no-np-deduction", no_np, "skip the reuse (NP/CNP) deductions");

  auto *transform = app.add_subcommand("transform", "transform a model and verify the result");
  transform->add_option("SPEC", spec, "specification file")->required();
  transform->add_option("MODEL", model, "input model (source side for forward, target side for backward)")
      ->required();
  transform->add_option("--direction", direction, "forward or backward")
      ->required()
      ->check(CLI::IsMember({"forward", "backward"}));
  transform->add_option("-o,--output", out, "resulting triple graph")->required();
  transform->add_option("--trace", trace, "write the rule application trace here");
  auto *seed_opt = transform->add_option("--seed", seed, "pick applicable rules at random with this seed");
  transform->add_flag("--no-np-deduction", no_np, "skip the reuse (NP/CNP) deductions");

  auto *check = app.add_subcommand("check", "check a triple graph against a specification");
  check->add_option("SPEC", spec, "specification file")->required();
  check->add_option("TRIPLE", triple, "triple graph file")->required();
  check->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));

  auto *analyze = app.add_subcommand("analyze", "static analysis of a specification");
  analyze->add_option("SPEC", spec, "specification file")->required();
  analyze->add_option("-o,--output", out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*deduce) {
      emit(out, tgp::write_annotated(tgp::run_deduction_pipeline(load_spec(spec), {!no_np})));
    } else if (*compile) {
      const auto dir = tgp::parse_direction(direction);
      emit(out, tgp::write_rules({dir, tgp::generate_rules(load_spec(spec), dir, {!no_np})}));
    } else if (*transform) {
      const auto s = load_spec(spec);
      const auto m = tgp::parse_model(tgp::read_file(model));
      tgp::TransformOptions opts{!no_np, std::nullopt};
      if (*seed_opt)
        opts.seed = seed;
      tgp::TransformResult r;
      try {
        r = tgp::transform(s, m, tgp::parse_direction(direction), opts);
      } catch (const tgp::InputError &e) {
        std::cerr << "tgpc: " << e.what() << "\n";
        return 2;
      } catch (const tgp::Error &e) {
        std::cerr << "tgpc: transformation failed: " << e.what() << "\n";
        return 1;
      }
      emit(out, tgp::write_triple(r.result));
      if (!trace.empty())
        tgp::write_file(trace, tgp::write_trace(r.trace));
      for (const auto &d : r.diagnostics)
        std::cerr << "tgpc: note: " << d << "\n";
    } else if (*check) {
      const auto s = load_spec(spec);
      const auto t = tgp::parse_triple(tgp::read_file(triple));
      if (auto errs = tgp::validate_triple(t, s.metamodel); !errs.empty()) {
        std::cerr << "tgpc: triple graph is not typed over the specification: " << errs.front() << "\n";
        return 2;
      }
      const auto report = tgp::check_spec(t, s);
      std::cout << (format == "structured" ? tgp::write_report(report) : tgp::report_text(report));
      return report.satisfied() ? 0 : 1;
    } else if (*analyze) {
      emit(out, tgp::write_analysis(tgp::analyze(load_spec(spec))));
    }
  } catch (const tgp::Error &e) {
    std::cerr << "tgpc: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
