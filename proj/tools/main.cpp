// Command-line front end: seed/fan ingestion, subcommand dispatch,
// deterministic report emission. Exit codes: 0 success, 1 input error,
// 2 internal inconsistency.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "lcy/json_io.hpp"

namespace {

using namespace lcy;

struct Input {
  std::string fan_arg, seed_arg;
  bool has_fan() const { return !fan_arg.empty(); }
  bool has_seed() const { return !seed_arg.empty(); }

  static std::string slurp(const std::string& arg) {
    // inline JSON starts with '{'; otherwise treat as a path
    if (!arg.empty() && arg[0] == '{') return arg;
    std::ifstream f(arg);
    if (!f) throw std::invalid_argument("cannot open input file: " + arg);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  FanSeedSpec fan() const {
    if (!has_fan()) throw std::invalid_argument("this input must be --fan");
    return fan_spec_from_json(json::parse(slurp(fan_arg)));
  }
  Seed seed() const {
    if (has_seed()) return seed_from_json(json::parse(slurp(seed_arg)));
    if (has_fan()) return seed_from_fan_spec(fan());
    throw std::invalid_argument("need --seed or --fan");
  }
  FanSeedSpec fan_or_data() const {
    if (has_fan()) return fan();
    return fan_data_of(seed());
  }
  void check() const {
    if (has_fan() == has_seed())
      throw std::invalid_argument("exactly one of --fan / --seed required");
  }
};

std::vector<int> parse_word(const std::string& w, int n) {
  std::vector<int> out;
  std::stringstream ss(w);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int j = std::stoi(tok);
    if (j < 1 || j > n) throw std::invalid_argument("word index out of range: " + tok);
    out.push_back(j - 1);
  }
  return out;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
}

std::string rat_csv(const Rat& x) { return rat_str(x); }

QVec2 parse_qvec(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected \"x,y\" with rational entries: " + s);
  return {rat_from_str(s.substr(0, comma)), rat_from_str(s.substr(comma + 1))};
}

std::string develop_csv(const FanModel& m, long sheets) {
  DevelopingMap dev(m);
  std::string s = "sheet,ray_index,x,y\n";
  for (long sh = -sheets; sh <= sheets; sh++)
    for (int i = 0; i < m.n(); i++) {
      Vec2 v = dev.image(sh, i);
      s += std::to_string(sh) + "," + std::to_string(i + 1) + "," + v.x.get_str() +
           "," + v.y.get_str() + "\n";
    }
  return s;
}

std::string develop_svg(const FanModel& m, long sheets) {
  // presentational only: rays per sheet, sheet-indexed coloring
  DevelopingMap dev(m);
  static const char* colors[] = {"#1b6ca8", "#c0392b", "#27ae60",
                                 "#8e44ad", "#d35400", "#2c3e50"};
  std::string s =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-220 -220 440 440\">\n";
  for (long sh = -sheets; sh <= sheets; sh++) {
    const char* col = colors[size_t((sh % 6 + 6) % 6)];
    for (int i = 0; i < m.n(); i++) {
      Vec2 v = dev.image(sh, i);
      // scale the primitive direction to a fixed display length (exact
      // coordinates matter nowhere here)
      Vec2 p = primitive(v);
      Int norm = abs(p.x) + abs(p.y);
      Rat fx = Rat(p.x) * 200 / norm, fy = Rat(p.y) * 200 / norm;
      s += "  <line x1=\"0\" y1=\"0\" x2=\"" + floor_rat(fx).get_str() + "\" y2=\"" +
           floor_rat(-fy).get_str() + "\" stroke=\"" + col + "\"/>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

std::string trace_csv(const FanModel& m, long sheet, const QVec2& p, const QVec2& w,
                      long cutoff) {
  LineTrace tr = trace_line(m, sheet, p, w, cutoff);
  std::string s;
  if (std::holds_alternative<TraceWrapsInfinitely>(tr.verdict)) {
    s += "# verdict,wraps_infinitely\n";
  } else {
    auto& e = std::get<TraceEscapes>(tr.verdict);
    s += "# verdict,escapes,forward_cone," + std::to_string(e.forward.cone) +
         ",backward_cone," + std::to_string(e.backward.cone) + ",wrap_count," +
         e.wrap_count.get_str() + "\n";
  }
  s += "ray,t,x,y\n";
  for (auto& c : tr.crossings)
    s += std::to_string(c.ray) + "," + rat_csv(c.t) + "," + rat_csv(c.point.x) + "," +
         rat_csv(c.point.y) + "\n";
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"rank-2 seed / tropical plane classification toolkit"};
  app.require_subcommand(1);

  Input in;
  std::string word_str, out_path, format = "json", mode = "coprime", point_str,
              dir_str;
  long wrap_cutoff = 50, sheets = 2, sheet = 0;
  bool strict_gamma = false;

  auto add_input = [&](CLI::App* c) {
    c->add_option("--fan", in.fan_arg, "fan spec JSON (inline or path)");
    c->add_option("--seed", in.seed_arg, "seed JSON (inline or path)");
    c->add_option("--out", out_path, "write output to a file");
  };

  auto* c_classify = app.add_subcommand("classify", "full classification report");
  add_input(c_classify);
  c_classify->add_flag("--strict-gamma", strict_gamma,
                       "require frozen-set preservation for group elements");

  auto* c_mutate = app.add_subcommand("mutate", "apply a mutation word");
  add_input(c_mutate);
  c_mutate->add_option("--word", word_str, "1-based indices, e.g. 1,3,2")->required();

  auto* c_quiver = app.add_subcommand("quiver", "emit the quiver as DOT");
  add_input(c_quiver);

  auto* c_mono = app.add_subcommand("monodromy", "monodromy and Kodaira verdict");
  add_input(c_mono);

  auto* c_dev = app.add_subcommand("develop", "developing-map ray images");
  add_input(c_dev);
  c_dev->add_option("--sheets", sheets, "emit sheets -N..N (default 2)");
  c_dev->add_option("--format", format, "csv | svg");

  auto* c_trace = app.add_subcommand("trace", "trace a straight line");
  add_input(c_trace);
  c_trace->add_option("--point", point_str, "start point x,y (rationals)")->required();
  c_trace->add_option("--dir", dir_str, "direction x,y (rationals)")->required();
  c_trace->add_option("--sheet", sheet, "sheet of the start point (default 0)");
  c_trace->add_option("--wrap-cutoff", wrap_cutoff, "wrap detection cutoff");

  auto* c_qform = app.add_subcommand("qform", "intersection form on the kernel");
  add_input(c_qform);

  auto* c_charge = app.add_subcommand("charge", "total blowup count");
  add_input(c_charge);

  auto* c_group = app.add_subcommand("modular-group", "modular group label and generators");
  add_input(c_group);
  c_group->add_flag("--strict-gamma", strict_gamma,
                    "require frozen-set preservation for group elements");

  auto* c_norm = app.add_subcommand("normalize", "coprime / maximally-factored form");
  add_input(c_norm);
  c_norm->add_option("--mode", mode, "coprime | max-factor");

  CLI11_PARSE(app, argc, argv);
  in.check();

  if (c_classify->parsed()) {
    ClassifyOptions opts;
    opts.strict_gamma = strict_gamma;
    ClassificationReport r = classify(in.seed(), opts);
    emit(out_path, report_to_json(r).dump(2) + "\n");
  } else if (c_mutate->parsed()) {
    Seed S = in.seed();
    Seed M = mutate_word(S, parse_word(word_str, S.n));
    emit(out_path, seed_to_json(M).dump(2) + "\n");
  } else if (c_quiver->parsed()) {
    emit(out_path, quiver_dot(quiver_of(in.seed())));
  } else if (c_mono->parsed()) {
    Seed S = in.seed();
    FanModel m = fan_model_of(S);
    Mat2 mu = monodromy(m);
    Mat2 mu_inv = mu.inverse();
    json j;
    j["mu"] = mat2_to_json(mu);
    j["mu_inverse"] = mat2_to_json(mu_inv);
    j["conjugacy"] = conj_str(sl2_conjugacy(mu_inv));
    j["kodaira"] = kodaira_identify(mu_inv).str();
    emit(out_path, j.dump(2) + "\n");
  } else if (c_dev->parsed()) {
    FanModel m = normalize_fan(in.fan_or_data());
    if (sheets < 0) throw std::invalid_argument("--sheets must be >= 0");
    if (format == "svg")
      emit(out_path, develop_svg(m, sheets));
    else if (format == "csv" || format == "json")
      emit(out_path, develop_csv(m, sheets));
    else
      throw std::invalid_argument("develop: format must be csv or svg");
  } else if (c_trace->parsed()) {
    if (wrap_cutoff < 1) throw std::invalid_argument("--wrap-cutoff must be >= 1");
    FanModel m = normalize_fan(in.fan_or_data());
    emit(out_path,
         trace_csv(m, sheet, parse_qvec(point_str), parse_qvec(dir_str), wrap_cutoff));
  } else if (c_qform->parsed()) {
    GramLattice g = q_form(in.seed());
    json j;
    j["gram"] = json::array();
    for (int i = 0; i < g.rank(); i++) {
      json row = json::array();
      for (int k = 0; k < g.rank(); k++) row.push_back(json_of_int(g.gram(i, k)));
      j["gram"].push_back(row);
    }
    j["negative_definite"] = is_negative_definite(g);
    j["ade"] = ade_type(g).str();
    emit(out_path, j.dump(2) + "\n");
  } else if (c_charge->parsed()) {
    emit(out_path, charge(normalize_fan(in.fan_or_data())).get_str() + "\n");
  } else if (c_group->parsed()) {
    Seed S = in.seed();
    Mat2 mu_inv = monodromy_via_mutations(S);
    GroupDescriptor g = modular_group(S, kodaira_identify(mu_inv), 2, strict_gamma);
    json j;
    j["label"] = g.label_str();
    j["conjectural"] = g.aut_conjectural;
    j["generators"] = json::array();
    for (auto& e : g.generators) j["generators"].push_back(gamma_element_to_json(e));
    emit(out_path, j.dump(2) + "\n");
  } else if (c_norm->parsed()) {
    Seed S = in.seed();
    if (mode == "coprime")
      emit(out_path, seed_to_json(make_coprime(S)).dump(2) + "\n");
    else if (mode == "max-factor")
      emit(out_path, seed_to_json(maximally_factor(S)).dump(2) + "\n");
    else
      throw std::invalid_argument("normalize: mode must be coprime or max-factor");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    // cross-check failures inside the library surface as plain logic_error
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
