#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "export.hpp"
#include "klein/json.hpp"

namespace klein::cli {
namespace {

class InputError : public Error {
 public:
  using Error::Error;
};

struct Failure {
  int code;
  std::string type;
  std::string message;
  std::optional<LatticePoint> point;
};

struct Common {
  std::string input;
  std::string output;
  std::string format = "json";
  unsigned workers = 0;
  bool timing = false;
};

Json readInput(std::string const& src) {
  if (src.empty()) throw InputError("--input is required");
  std::string text;
  auto first = src.find_first_not_of(" \t\r\n");
  if (src == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (first != std::string::npos && (src[first] == '{' || src[first] == '[')) {
    text = src;
  } else {
    std::ifstream f(src);
    if (!f) throw InputError("cannot read " + src);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  try {
    return Json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

void emit(Common const& c, std::string const& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw InputError("cannot write " + c.output);
  f << text;
}

template <class F>
auto asInput(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (SchemaError const&) {
    throw;
  } catch (Error const& e) {
    throw InputError(e.what());
  }
}

void requireDim(PointList const& pts, std::size_t d) {
  for (auto const& p : pts)
    if (p.dim() != d) throw InputError("expected points in Z^" + std::to_string(d));
}

void checkWitness(IntegerAffineMap const& w, PointList const& input, CanonicalForm const& form, bool marked) {
  auto target = canonicalVertices(form);
  PointList image = applyMap(w, input);
  if (sortedUnique(image) != sortedUnique(target.all()) || (marked && image[0] != target.apex))
    throw InternalError("witness for " + form.str() + " does not reproduce the canonical vertices");
}

Json classify(Json const& in, bool marked) {
  PointList input;
  bool const tetrahedron = in.contains("vertices");
  if (tetrahedron) {
    input = json::toPoints(in.at("vertices"));
    if (input.size() != 4) throw InputError("\"vertices\" must list the four vertices of a tetrahedron");
  } else {
    input.push_back(json::toPoint(json::field(in, "apex")));
    for (auto const& p : json::toPoints(json::field(in, "base"))) input.push_back(p);
  }
  requireDim(input, 3);
  std::optional<ClassificationResult> res;
  if (tetrahedron || (!marked && input.size() == 4)) {
    if (simplexVolume(input) == 0) throw InputError("tetrahedron is flat");
    for (auto const& p : latticePointsInHull(input))
      if (std::find(input.begin(), input.end(), p) == input.end()) throw NotCompletelyEmptyError(p);
    res = classifyEmptyTetrahedron(input, marked ? std::optional<std::size_t>(0) : std::nullopt);
  } else {
    if (!marked) throw InputError("--unmarked applies to tetrahedra");
    auto pyr = asInput([&] { return MarkedPyramid(input[0], PointList(input.begin() + 1, input.end())); });
    res = classifyMarkedPyramid(pyr);
  }
  checkWitness(res->witness, input, res->form, marked);
  return Json{{"marked", marked}, {"result", json::classification(*res)}};
}

Json classifyFaceCmd(Json const& in, std::optional<std::size_t> dim) {
  PointList vs = json::toPoints(json::field(in, "vertices"));
  auto poly = asInput([&] { return ConvexLatticePolygon(vs); });
  std::size_t const ambient = poly.chart().ambientDim();
  if (ambient < 3) throw InputError("faces lie in Z^(n+1) with n >= 2");
  std::size_t const n = dim.value_or(ambient - 1);
  auto fc = [&] {
    try {
      return classifyFace(poly, n);
    } catch (DimensionError const& e) {
      throw InputError(e.what());
    } catch (NotAPyramidError const& e) {
      throw InputError(e.what());
    } catch (QuadrangleInDimTwoError const& e) {
      throw InputError(e.what());
    }
  }();
  PointList local{LatticePoint::zero(3)};
  for (auto const& p : fc.chart.coordinates(poly.vertices())) local.push_back(p);
  checkWitness(fc.witness, local, fc.form, true);
  Json result{{"form", json::form(fc.form)}, {"storyCount", json::integer(fc.r)}};
  if (fc.r >= 2) result["entry"] = json::beta(betaEntryOf(fc.form));
  result["witness"] = json::affineMap(fc.witness);
  return Json{{"dim", n}, {"vertices", json::points(poly.vertices())}, {"result", result}};
}

struct EnumerateOutput {
  Json report;
  Json atlas;
};

EnumerateOutput enumerateCmd(int bound, unsigned workers) {
  if (bound < 0) throw InputError("--bound must be nonnegative");
  if (bound > kMaxEnumerationBound)
    throw EnumerationCapError("bound " + std::to_string(bound) + " exceeds the cap " +
                              std::to_string(kMaxEnumerationBound));
  EnumerationReport rep;
  if (bound > 0) rep = classifyEnumeration(enumerateCompletelyEmptyPyramids({bound, workers}), workers);
  std::map<CanonicalForm, std::vector<OrbitClassification const*>> groups;
  for (auto const& o : rep.orbits) groups[o.result.form].push_back(&o);
  Json classes = Json::array(), atlas = Json::array();
  for (auto const& [form, orbits] : groups) {
    classes.push_back(Json{{"form", json::form(form)}, {"pyramids", rep.counts.at(form)}, {"orbits", orbits.size()}});
    Json members = Json::array();
    for (auto const* o : orbits) members.push_back(Json{{"base", json::points(o->orbit.base)}, {"size", o->orbit.size}});
    atlas.push_back(Json{{"form", json::form(form)}, {"pyramids", rep.counts.at(form)}, {"orbits", members}});
  }
  Json summary{{"bound", bound}, {"pyramids", rep.pyramids}, {"orbits", rep.orbits.size()}};
  Json report = summary;
  report["classes"] = classes;
  Json full = summary;
  full["apex"] = json::point(LatticePoint::zero(3));
  full["classes"] = atlas;
  return {report, full};
}

FractionSpec specOf(Json const& in) {
  if (in.is_object() && !in.contains("matrix") && !in.contains("hyperplanes") && !in.contains("rays") &&
      in.contains("result"))
    return json::toSpec(in.at("result"));
  return json::toSpec(in);
}

std::optional<std::vector<int>> orthantOf(Json const& in) {
  Json const* src = &in;
  if (in.is_object() && !in.contains("orthant") && in.contains("result")) src = &in.at("result");
  if (!src->is_object() || !src->contains("orthant")) return std::nullopt;
  auto const& o = src->at("orthant");
  if (!o.is_array()) throw SchemaError("orthant must be an array of signs");
  std::vector<int> signs;
  for (auto const& s : o) {
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
      throw SchemaError("orthant signs must be 1 or -1");
    signs.push_back(s.get<int>());
  }
  return signs;
}

Json sailCmd(Json const& in, unsigned workers, SailOptions const& opt, std::vector<Sail>& sails) {
  FractionSpec spec = specOf(in);
  auto cones = conesFromSpec(spec);
  if (auto signs = orthantOf(in)) {
    if (spec.kind() == FractionSpec::Kind::Rays) throw InputError("orthant selection needs a matrix or hyperplanes");
    std::erase_if(cones, [&](auto const& c) { return c.orthantSigns() != *signs; });
    if (cones.empty()) throw InputError("orthant must have one sign per coordinate");
  }
  sails = computeSails(cones, workers ? workers : 1, opt);
  Json list = Json::array();
  for (auto const& s : sails) {
    Json j = json::sail(s);
    if (s.cone.dim() >= 3 && s.certified) {
      Json faces = Json::array();
      for (auto const& f : extractTwoFaces(s)) faces.push_back(json::sailFace(f));
      j["twoFaces"] = faces;
    }
    list.push_back(j);
  }
  return Json{{"spec", json::spec(spec)}, {"sails", list}};
}

Json realizeCmd(Json const& in, std::size_t n, long long maxDenominator) {
  CanonicalForm form = json::toForm(in.contains("form") ? in.at("form") : in);
  auto r = [&] {
    try {
      return realizeFace(form, n, {maxDenominator});
    } catch (DimensionError const& e) {
      throw InputError(e.what());
    } catch (ParameterError const& e) {
      throw InputError(e.what());
    }
  }();
  Json result{{"form", json::form(form)}, {"dim", n}, {"epsilonDenominator", json::integer(r.epsilonDenominator)},
              {"orthant", json::integers(r.orthantSigns)}};
  Json spec = json::spec(r.spec);
  for (auto const& [k, v] : spec.items()) result[k] = v;
  return Json{{"result", result}};
}

Json verifyCmd(VerifyOptions const& opt, bool& passed) {
  auto rep = runVerifyLists(opt);
  passed = rep.passed();
  Json checks = Json::array();
  for (auto const& c : rep.checks) {
    Json j{{"name", c.name}, {"cases", c.cases}, {"passed", c.passed}};
    if (!c.passed) j["counterexample"] = c.counterexample;
    checks.push_back(j);
  }
  return Json{{"options",
               {{"maxR", opt.maxR}, {"maxA", opt.maxA}, {"maxB", opt.maxB}, {"bound", opt.bound},
                {"seed", opt.seed}, {"maps", opt.mapsPerForm}}},
              {"passed", passed},
              {"checks", checks}};
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err, Hooks const& hooks) {
  CLI::App app{"Completely empty lattice pyramids and sails of multidimensional continued fractions", "klein"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common c;
  bool marked = true;
  std::optional<std::size_t> dim;
  int bound = 3;
  std::string atlasPath;
  SailOptions sailOpt;
  long long sailCap = 4096;
  long long maxDenominator = 64;
  VerifyOptions vopt;
  vopt.vertices = hooks.vertices;

  auto common = [&](CLI::App* sub, bool needsInput) {
    auto* in = sub->add_option("--input,-i", c.input, "JSON file, inline JSON, or - for stdin");
    if (needsInput) in->required();
    sub->add_option("--output,-o", c.output, "Write the result here instead of stdout");
    sub->add_flag("--timing", c.timing, "Add elapsed milliseconds to the report");
  };
  auto* classifySub = app.add_subcommand("classify", "Classify a completely empty pyramid or empty tetrahedron");
  common(classifySub, true);
  classifySub->add_flag("--marked,!--unmarked", marked, "Keep the apex fixed (default) or forget it");

  auto* faceSub = app.add_subcommand("classify-face", "Classify a sail face polygon in Z^(n+1)");
  common(faceSub, true);
  faceSub->add_option("--dim", dim, "Dimension n of the continued fraction")->check(CLI::PositiveNumber);

  auto* enumSub = app.add_subcommand("enumerate", "Enumerate completely empty multistory pyramids in a box");
  common(enumSub, false);
  enumSub->add_option("--bound", bound, "Base vertices in [-bound, bound]^3")->capture_default_str();
  enumSub->add_option("--atlas", atlasPath, "Write every orbit, grouped by form, to this file");
  enumSub->add_option("--workers", c.workers, "Worker threads (0: all cores)");

  auto* sailSub = app.add_subcommand("sail", "Compute sails and their face census");
  common(sailSub, true);
  sailSub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "off", "svg"}));
  sailSub->add_option("--workers", c.workers, "Worker threads (0: all cores)");
  sailSub->add_option("--max-bound", sailCap, "Cap on the coordinate bound of the search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sailSub->add_option("--max-candidates", sailOpt.maxCandidates, "Cap on the cone index")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* realizeSub = app.add_subcommand("realize", "Build a continued fraction with a given face");
  common(realizeSub, true);
  realizeSub->add_option("--dim", dim, "Dimension n of the continued fraction (default 2)")->check(CLI::PositiveNumber);
  realizeSub->add_option("--max-denominator", maxDenominator, "Largest k tried for the dilation 1 + 1/k")
      ->check(CLI::Range(2LL, 1000000LL))
      ->capture_default_str();

  auto* verifySub = app.add_subcommand("verify-lists", "Run the property checks over the lists");
  verifySub->add_option("--output,-o", c.output, "Write the result here instead of stdout");
  verifySub->add_flag("--timing", c.timing, "Add elapsed milliseconds to the report");
  verifySub->add_option("--max-r", vopt.maxR, "Largest story count")->check(CLI::Range(1, 1000))->capture_default_str();
  verifySub->add_option("--max-a", vopt.maxA, "Largest a")->check(CLI::Range(1, 1000))->capture_default_str();
  verifySub->add_option("--max-b", vopt.maxB, "Largest b")->check(CLI::Range(1, 1000))->capture_default_str();
  verifySub->add_option("--bound", vopt.bound, "Box for the exhaustive check (0: skip)")
      ->check(CLI::Range(0, kMaxEnumerationBound))
      ->capture_default_str();
  verifySub->add_option("--seed", vopt.seed, "Seed for the random unimodular maps")->capture_default_str();
  verifySub->add_option("--maps", vopt.mapsPerForm, "Random maps per form")->check(CLI::NonNegativeNumber);
  verifySub->add_option("--workers", vopt.workers, "Worker threads (0: all cores)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  auto* sub = app.get_subcommands().front();
  std::string const command = sub->get_name();
  Json report{{"command", command}, {"version", kVersion}};
  auto const start = std::chrono::steady_clock::now();
  std::optional<Failure> failure;
  int code = kOk;
  std::vector<Sail> sails;
  try {
    if (command == "classify") {
      report.update(classify(readInput(c.input), marked));
    } else if (command == "classify-face") {
      report.update(classifyFaceCmd(readInput(c.input), dim));
    } else if (command == "enumerate") {
      auto e = enumerateCmd(bound, c.workers);
      report.update(e.report);
      if (!atlasPath.empty()) {
        std::ofstream f(atlasPath);
        if (!f) throw InputError("cannot write " + atlasPath);
        f << e.atlas.dump(2) << "\n";
      }
    } else if (command == "sail") {
      sailOpt.cap = sailCap;
      report.update(sailCmd(readInput(c.input), c.workers, sailOpt, sails));
    } else if (command == "realize") {
      report.update(realizeCmd(readInput(c.input), dim.value_or(2), maxDenominator));
    } else {
      bool passed = false;
      report.update(verifyCmd(vopt, passed));
      if (!passed) code = kFailure;
    }
  } catch (NotCompletelyEmptyError const& e) {
    failure = Failure{kNotCompletelyEmpty, "not-completely-empty", e.what(), e.point()};
  } catch (EnumerationCapError const& e) {
    failure = Failure{kEnumerationCap, "enumeration-cap", e.what(), {}};
  } catch (IrrationalSpectrumError const& e) {
    failure = Failure{kIrrationalSpectrum, "irrational-spectrum", e.what(), {}};
  } catch (BudgetExceededError const& e) {
    failure = Failure{kBudget, "budget-exceeded", e.what(), {}};
  } catch (SchemaError const& e) {
    failure = Failure{kBadInput, "schema", e.what(), {}};
  } catch (InputError const& e) {
    failure = Failure{kBadInput, "invalid-input", e.what(), {}};
  } catch (nlohmann::json::exception const& e) {
    failure = Failure{kBadInput, "schema", e.what(), {}};
  } catch (std::exception const& e) {
    failure = Failure{kFailure, "error", e.what(), {}};
  }

  if (failure) {
    Json e{{"code", failure->code}, {"type", failure->type}, {"message", failure->message}};
    if (failure->point) e["point"] = json::point(*failure->point);
    report["error"] = e;
    out << report.dump(2) << "\n";
    err << "klein " << command << ": " << failure->message << "\n";
    return failure->code;
  }

  if (c.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    report["elapsedMs"] = ms.count();
  }
  try {
    if (c.format == "off") {
      emit(c, toOff(sails), out);
    } else if (c.format == "svg") {
      emit(c, toSvg(sails), out);
    } else {
      emit(c, report.dump(2) + "\n", out);
    }
  } catch (std::exception const& e) {
    err << "klein " << command << ": " << e.what() << "\n";
    return kBadInput;
  }
  return code;
}

}  // namespace klein::cli
