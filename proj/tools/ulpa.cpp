// Command-line front end.  Exit codes: 0 ok, 1 parse or validation failure,
// 2 undefined or unsupported operation, 3 nothing found within the bound,
// 4 the Steinberg cross-check disagreed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "ulpa/ulpa.hpp"

namespace {

using namespace ulpa;

struct Options {
  std::string field = "q";
  std::string file;
  std::string expr1, expr2;
  bool json = false;
  bool cross_check = false;
  int radius = 1;
  bool increasing = false;
  std::string out;
  std::string base;
  std::string twist;
  std::size_t depth = 4;
  std::string q, p;
  long k = 0;
};

struct CrossCheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::DocumentError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

template <class Vector, class Format>
std::string format_vector(const Vector& v, Format basis) {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : v) {
    const bool negative = c.is_negative();
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    if (!c.abs().is_one()) out += io::format_coefficient(c) + "*";
    out += basis(b);
  }
  return out;
}

void cross_check(bool agrees, const std::string& what) {
  if (!agrees) throw CrossCheckFailure("Steinberg cross-check failed: " + what);
}

template <Field F>
int run(const std::string& command, const Options& o, const F& field) {
  using K = typename F::scalar;
  const Ultragraph g = io::parse_document(read_file(o.file));
  const LeavittPathAlgebra<F> L(g, field);

  if (command == "analyze") {
    const auto r = report(g);
    std::cout << (o.json ? io::report_json(g, r).dump(2) + "\n" : io::report_text(g, r));
    return 0;
  }
  if (command == "dot") {
    write_output(o.out, io::emit_dot(g));
    return 0;
  }
  if (command == "skew") {
    const auto w = build_skew(g, o.radius, o.increasing);
    if (!is_acyclic(w)) throw std::logic_error("skew window has a cycle");
    write_output(o.out, io::emit_document(w.generated));
    return 0;
  }
  if (command == "reduce") {
    const auto a = io::parse_element(L, o.expr1);
    const auto n = L.normalize(a);
    if (o.cross_check) cross_check(pi_G(g, a) == pi_G(g, n), "normal form changes the cylinder image");
    std::cout << io::format_element(L, n) << "\n";
    return 0;
  }
  if (command == "eq") {
    const auto a = io::parse_element(L, o.expr1);
    const auto b = io::parse_element(L, o.expr2);
    const bool equal = L.eq(a, b);
    if (o.cross_check) cross_check(equal == (pi_G(g, a) == pi_G(g, b)), "models disagree on equality");
    std::cout << (equal ? "true" : "false") << "\n";
    return 0;
  }
  if (command == "mul") {
    const auto a = io::parse_element(L, o.expr1);
    const auto b = io::parse_element(L, o.expr2);
    const auto ab = L.mul(a, b);
    if (o.cross_check)
      cross_check(pi_G(g, ab) == st_convolve(g, pi_G(g, a), pi_G(g, b)), "product differs from convolution");
    std::cout << io::format_element(L, ab) << "\n";
    return 0;
  }
  if (command == "inner-inverse") {
    const auto x = io::parse_element(L, o.expr1);
    const auto r = L.inner_inverse(x, o.depth);
    if (const auto* nf = std::get_if<NotFoundWithinDepth>(&r))
      throw NotFound("no inner inverse among monomials of min-length <= " + std::to_string(nf->depth_reached));
    std::cout << io::format_element(L, std::get<Element<K>>(r)) << "\n";
    return 0;
  }
  if (command == "module") {
    const auto base = io::parse_path(g, o.base);
    const auto a = io::parse_element(L, o.expr1);
    auto tail = [&](const ShiftedTail& st) { return "[" + format_tail(g, st) + "]"; };
    if (o.twist.empty()) {
      const PathModule<F> mod(L, base);
      std::cout << format_vector(mod.act_elem(a, mod.vector_of(base)), tail) << "\n";
    } else {
      const TwistedModule<F> mod(L, base, IrreduciblePoly<F>(field, io::parse_polynomial(field, o.twist)));
      auto basis = [&](const typename TwistedModule<F>::Basis& b) {
        return tail(b.first) + (b.second == 0 ? "" : "*t" + (b.second > 1 ? "^" + std::to_string(b.second) : ""));
      };
      std::cout << format_vector(mod.act_elem(a, mod.vector_of(base)), basis) << "\n";
    }
    return 0;
  }
  if (command == "factor") {
    const GroupoidPoint pt{io::parse_path(g, o.q), o.k, io::parse_path(g, o.p)};
    for (const auto& f : factor_positive(g, pt))
      std::cout << "(" << f.q.format(g) << ", " << f.k << ", " << f.p.format(g) << ")\n";
    return 0;
  }
  if (command == "groupoid-eval") {
    const auto a = io::parse_element(L, o.expr1);
    const GroupoidPoint pt{io::parse_path(g, o.q), o.k, io::parse_path(g, o.p)};
    require_valid_point(pt);
    std::cout << st_eval(g, pi_G(g, a), pt, field.zero()).to_string() << "\n";
    return 0;
  }
  throw std::logic_error("unhandled command " + command);
}

int dispatch(const std::string& command, const Options& o) {
  if (o.field == "q") return run(command, o, RationalField{});
  if (o.field.rfind("fp:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(o.field.substr(3));
    } catch (const std::exception&) {
      throw io::ParseError(1, 4, "bad prime in --field");
    }
    return run(command, o, PrimeField(p));
  }
  throw io::ParseError(1, 1, "--field must be 'q' or 'fp:<prime>'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leavitt path algebras of finite ultragraphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "coefficient field: q or fp:<prime>")->capture_default_str();

  auto file = [&](CLI::App* c) { c->add_option("file", o.file, "ultragraph document")->required(); };

  auto* analyze = app.add_subcommand("analyze", "structure report");
  file(analyze);
  analyze->add_flag("--json", o.json, "machine-readable output");

  auto* reduce = app.add_subcommand("reduce", "normal form of an element");
  file(reduce);
  reduce->add_option("expr", o.expr1)->required();
  reduce->add_flag("--cross-check", o.cross_check, "re-verify in the Steinberg model");

  auto* eq = app.add_subcommand("eq", "equality of two elements");
  file(eq);
  eq->add_option("lhs", o.expr1)->required();
  eq->add_option("rhs", o.expr2)->required();
  eq->add_flag("--cross-check", o.cross_check, "re-verify in the Steinberg model");

  auto* mul = app.add_subcommand("mul", "product of two elements");
  file(mul);
  mul->add_option("lhs", o.expr1)->required();
  mul->add_option("rhs", o.expr2)->required();
  mul->add_flag("--cross-check", o.cross_check, "re-verify in the Steinberg model");

  auto* skew = app.add_subcommand("skew", "window of the skew-product ultragraph");
  file(skew);
  skew->add_option("--radius,-N", o.radius, "window radius")->required()->check(CLI::Range(1, 64));
  skew->add_option("-o,--output", o.out, "output document");
  skew->add_flag("--increasing", o.increasing, "ranges one level up instead of down");

  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  file(dot);
  dot->add_option("-o,--output", o.out, "output file");

  auto* module = app.add_subcommand("module", "Chen module actions");
  module->require_subcommand(1);
  auto* act = module->add_subcommand("act", "act on the base path's basis vector");
  file(act);
  act->add_option("--base", o.base, "infinite path prefix|cycle")->required();
  act->add_option("--twist", o.twist, "irreducible polynomial in t");
  act->add_option("expr", o.expr1)->required();

  auto* inner = app.add_subcommand("inner-inverse", "y with x y x = x");
  file(inner);
  inner->add_option("expr", o.expr1)->required();
  inner->add_option("--depth", o.depth, "largest min-word-length searched")->capture_default_str();

  auto* factor = app.add_subcommand("factor", "degree-one factorization of an arrow (q, k, p)");
  file(factor);
  factor->add_option("q", o.q)->required();
  factor->add_option("k", o.k)->required();
  factor->add_option("p", o.p)->required();

  auto* geval = app.add_subcommand("groupoid-eval", "value of an element's cylinder image at (q, k, p)");
  file(geval);
  geval->add_option("expr", o.expr1)->required();
  geval->add_option("q", o.q)->required();
  geval->add_option("k", o.k)->required();
  geval->add_option("p", o.p)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, o);
  } catch (const io::DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid ultragraph\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v.subject << ": " << v.message << "\n";
    return 1;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ReduciblePolynomial& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotFound& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const CrossCheckFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
