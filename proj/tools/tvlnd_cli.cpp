// Batch front-end: parse a divisor description, validate it, classify the
// homogeneous locally nilpotent derivations, compute the homogeneous
// Makar-Limanov invariant, and trace derivation orbits.
//
// Exit codes: 0 success, 2 parse/validation failure, 3 inconclusive
// classification.

#include "tvlnd/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

tvl::InputSpec load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) tvl::fail(tvl::ErrorCode::ParseError, "cannot open '" + path + "'");
  tvl::Json j;
  try {
    j = tvl::Json::parse(in);
  } catch (const std::exception& e) {
    tvl::fail(tvl::ErrorCode::ParseError, std::string("JSON: ") + e.what());
  }
  return tvl::parse_input(j);
}

void emit(const tvl::Json& j, const std::string& format) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << tvl::render_text(j);
}

int exit_code_for(const tvl::Error& e) {
  switch (e.code) {
    case tvl::ErrorCode::ParseError:
    case tvl::ErrorCode::NotPointed:
    case tvl::ErrorCode::NonLatticeShift: return 2;
    case tvl::ErrorCode::InconclusiveRealization: return 3;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous LND classification for torus actions of complexity one"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  long degree_bound = -1, search_norm = -1;
  app.add_option("--degree-bound", degree_bound, "Truncation degree for affine section bases");
  app.add_option("--search-norm", search_norm, "Max-norm bound for certificate degree search");

  std::string file;
  bool toric = false;
  bool cls_fiber = false, cls_horizontal = false, cls_all = false;
  std::string lnd_id, element;
  long iterate = 16;

  auto add_common = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("file", file, "Input JSON")->required();
  };

  CLI::App* v = app.add_subcommand("validate", "Schema and properness checks");
  add_common(v);
  CLI::App* c = app.add_subcommand("classify", "Classify homogeneous LNDs");
  add_common(c);
  c->add_flag("--fiber", cls_fiber, "Fiber type only");
  c->add_flag("--horizontal", cls_horizontal, "Horizontal type only");
  c->add_flag("--all", cls_all, "Both types (default)");
  c->add_flag("--toric", toric, "Treat the input as toric data (ignore the divisor)");
  CLI::App* m = app.add_subcommand("ml", "Homogeneous Makar-Limanov invariant");
  add_common(m);
  m->add_flag("--toric", toric, "Treat the input as toric data");
  CLI::App* ap = app.add_subcommand("apply", "Apply a classified derivation to an element");
  add_common(ap);
  ap->add_option("--lnd", lnd_id, "Class id from a classify run (F:<k> or H:<k>:<z>)")->required();
  ap->add_option("--element", element, "Homogeneous element, e.g. \"-t chi^(4,0)\"")->required();
  ap->add_option("--iterate", iterate, "Number of applications to trace");

  CLI11_PARSE(app, argc, argv);

  try {
    tvl::InputSpec in = load_input(file);
    if (degree_bound >= 0) in.options.degree_bound = tvl::Int(degree_bound);
    if (search_norm >= 0) in.options.search_norm = tvl::Int(search_norm);

    tvl::Json out;
    bool inconclusive = false;
    if (app.got_subcommand(v)) {
      out["validate"] = tvl::report_validate(in);
      emit(out, format);
      return out["validate"]["proper"] == "not-proper" ? 2 : 0;
    }
    if (app.got_subcommand(c)) {
      if (toric) {
        out["toric"] = tvl::report_toric(in);
        emit(out, format);
        return 0;
      }
      out["validate"] = tvl::report_validate(in);
      if (out["validate"]["proper"] == "not-proper") {
        emit(out, format);
        return 2;
      }
      tvl::GradedAlgebra a = tvl::make_algebra(tvl::build_divisor(in));
      bool both = cls_all || (!cls_fiber && !cls_horizontal);
      if (both || cls_fiber) out["fiber"] = tvl::report_fiber(a, in.options);
      if (both || cls_horizontal)
        out["horizontal"] = tvl::report_horizontal(a, in.options, &inconclusive);
      emit(out, format);
      return inconclusive ? 3 : 0;
    }
    if (app.got_subcommand(m)) {
      if (toric) {
        out["toric"] = tvl::report_toric(in);
        emit(out, format);
        return 0;
      }
      out["validate"] = tvl::report_validate(in);
      if (out["validate"]["proper"] == "not-proper") {
        emit(out, format);
        return 2;
      }
      tvl::GradedAlgebra a = tvl::make_algebra(tvl::build_divisor(in));
      out["ml"] = tvl::report_ml(a, in.options);
      emit(out, format);
      return 0;
    }
    if (app.got_subcommand(ap)) {
      tvl::Json chk = tvl::report_validate(in);
      if (chk["proper"] == "not-proper") {
        out["validate"] = chk;
        emit(out, format);
        return 2;
      }
      tvl::GradedAlgebra a = tvl::make_algebra(tvl::build_divisor(in));
      out["apply"] = tvl::report_apply(a, in.options, lnd_id, element, iterate);
      emit(out, format);
      return 0;
    }
  } catch (const tvl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
