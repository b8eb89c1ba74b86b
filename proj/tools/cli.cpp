#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <sstream>

#include "abcat/encoder.hpp"
#include "abcat/errors.hpp"
#include "abcat/gadgets.hpp"
#include "abcat/grammar.hpp"
#include "abcat/reduction.hpp"

namespace abcat::cli {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

std::string latex_category(const Category& c) {
  std::string text = format_category(c), out;
  for (char ch : text) out += ch == '\\' ? std::string(" \\BS ") : std::string(1, ch);
  return out;
}

void render_text(const ReductionTree& t, std::size_t depth, std::ostream& out) {
  out << std::string(2 * depth, ' ') << format_category(t.root());
  if (!t.is_leaf()) {
    out << "  " << (t.rule() == ReductionTree::Rule::apply_right ? "/E" : "\\E") << "\n";
    render_text(t.left(), depth + 1, out);
    render_text(t.right(), depth + 1, out);
  } else {
    out << "\n";
  }
}

std::string render_latex(const ReductionTree& t) {
  if (t.is_leaf()) return latex_category(t.root());
  std::string tag = t.rule() == ReductionTree::Rule::apply_right ? "/E" : "\\BS E";
  return "\\infer[" + tag + "]{" + latex_category(t.root()) + "}{" + render_latex(t.left()) +
         " & " + render_latex(t.right()) + "}";
}

struct ReduceArgs {
  std::string inline_string;
  std::string file;
  std::string target;
  bool all = false;
  std::size_t trees = 0;
  std::string format = "text";
  bool oracle = false;
  std::size_t cap = kDefaultBruteForceCap;
  bool reserved = false;
};

int cmd_reduce(const ReduceArgs& a, std::ostream& out, std::ostream& err) {
  if (a.inline_string.empty() == a.file.empty()) {
    throw InputError("give the category string either inline or with --file");
  }
  if (a.target.empty() && !a.all) throw InputError("--target is required unless --all is given");
  if (a.trees > 0 && a.target.empty()) throw InputError("--trees needs --target");
  if (a.trees > 0 && a.oracle) throw InputError("--trees is not available with --oracle");

  ParseOptions opts{.allow_reserved = a.reserved};
  CategoryString s =
      parse_category_string(a.file.empty() ? a.inline_string : read_file(a.file), opts);
  std::optional<Category> target;
  if (!a.target.empty()) target = parse_category(a.target, opts);

  CategorySet derivable;
  if (a.oracle) {
    derivable = brute_force_derivable(s, s.size(), a.cap);
  } else if (a.all) {
    derivable = derivable_singletons(s);
  }

  int code = kYes;
  if (target) {
    bool yes = a.oracle ? derivable.contains(*target) : reducible_to(s, *target);
    out << (yes ? "yes" : "no") << "\n";
    code = yes ? kYes : kNo;
  } else {
    code = derivable.empty() ? kNo : kYes;
  }
  if (a.all) {
    for (const Category& c : derivable) out << format_category(c) << "\n";
  }

  if (a.trees > 0 && code == kYes) {
    auto trees = reduction_trees(s, *target, a.trees + 1);
    bool more = trees.size() > a.trees;
    if (more) trees.pop_back();
    if (a.format == "latex") {
      out << "% \\usepackage{proof}, \\newcommand{\\BS}{\\backslash}\n";
    }
    for (std::size_t i = 0; i < trees.size(); ++i) {
      if (a.format == "latex") {
        out << "% tree " << i + 1 << "\n\\[" << render_latex(trees[i]) << "\\]\n";
      } else {
        out << "tree " << i + 1 << ":\n";
        render_text(trees[i], 1, out);
      }
    }
    if (more) err << "more than " << a.trees << " trees exist; showing the first " << a.trees << "\n";
  }
  return code;
}

int cmd_gnf(const std::string& path, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
  Cfg g = to_gnf2(parse_cfg(read_file(path)));
  std::string text = format_cfg(g);
  if (out_path.empty()) {
    out << text;
    err << g.rules().size() << " rules\n";
  } else {
    write_file(out_path, text);
    out << g.rules().size() << " rules written to " << out_path << "\n";
  }
  return kYes;
}

int cmd_encode(const std::string& path, const std::string& out_path, bool assume_gnf2,
               std::ostream& out, std::ostream& err) {
  Cfg g = parse_cfg(read_file(path));
  Encoding e = encode_grammar(assume_gnf2 ? g : to_gnf2(g));
  std::ostringstream summary;
  summary << "|Omega| = " << e.uca.alphabet().size() << "\n";
  for (const Symbol& a : e.grammar.terminals()) {
    summary << "|h(" << a << ")| = " << e.h.image(a).size() << "\n";
  }
  summary << "primitives = " << e.uca.primitives().size() << "\n";
  if (out_path.empty()) {
    out << format_bundle(e);
    err << summary.str();
  } else {
    write_file(out_path, format_bundle(e));
    out << summary.str();
  }
  return kYes;
}

int cmd_member(const std::string& path, const std::vector<std::string>& words,
               const std::string& via, bool chars, std::ostream& out) {
  Cfg g = parse_cfg(read_file(path));
  std::vector<Word> parsed;
  for (const std::string& text : words) {
    Word w = tokenize_word(text, chars);
    if (w.empty()) throw InputError("empty word: languages never contain the empty string");
    for (const Symbol& a : w) {
      if (!g.is_terminal(a)) throw UnknownTerminal("'" + a + "' is not a terminal of the grammar");
    }
    parsed.push_back(std::move(w));
  }

  std::optional<CykRecognizer> cyk;
  std::optional<Encoding> enc;
  if (via != "encoding") cyk.emplace(g);
  if (via != "cyk") enc.emplace(encode_for_membership(g));

  bool all_yes = true, mismatch = false;
  for (const Word& w : parsed) {
    std::string shown = format_word(w);
    if (via == "both") {
      bool c = cyk->member(w);
      bool e = member_via_encoding(g, *enc, w);
      if (c != e) {
        mismatch = true;
        out << shown << ": MISMATCH cyk=" << (c ? "yes" : "no")
            << " encoding=" << (e ? "yes" : "no") << "\n";
        continue;
      }
      all_yes = all_yes && c;
      out << shown << ": " << (c ? "yes" : "no") << "\n";
    } else {
      bool r = via == "cyk" ? cyk->member(w) : member_via_encoding(g, *enc, w);
      all_yes = all_yes && r;
      out << shown << ": " << (r ? "yes" : "no") << "\n";
    }
  }
  if (mismatch) return kCapOrMismatch;
  return all_yes ? kYes : kNo;
}

struct GadgetArgs {
  std::string kind;
  std::string a, b, t = "t";
  std::string cats;
  std::string scope;
};

int cmd_gadget(const GadgetArgs& g, std::ostream& out) {
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw InputError(std::string("gadget needs ") + flag);
    return parse_category(v);
  };
  GadgetString s;
  if (g.kind == "x") {
    s = build_x(need(g.a, "--a"), Prim(g.t));
  } else if (g.kind == "y") {
    s = build_y(Prim(g.t), need(g.b, "--b"));
  } else if (g.kind == "z") {
    s = build_z(need(g.a, "--a"), need(g.b, "--b"), UPrims::named("").zprime.z);
  } else if (g.kind == "zprime") {
    s = build_z_prime(need(g.a, "--a"), need(g.b, "--b"), UPrims::named("").zprime);
  } else if (g.kind == "u") {
    s = build_u(need(g.a, "--a"), need(g.b, "--b"), UPrims::named(""));
  } else {
    if (g.cats.empty()) throw InputError("gadget w needs --cats");
    std::vector<Category> cats;
    std::stringstream ss(g.cats);
    for (std::string item; std::getline(ss, item, ',');) cats.push_back(parse_category(item));
    s = build_w(cats, g.scope);
  }
  for (const Category& c : s.items) out << format_category(c) << ";\n";
  out << "# " << s.items.size() << " items\n";
  out << "# fresh:";
  for (const Prim& p : s.fresh) out << " " << p.name();
  out << "\n";
  return kYes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"AB categorial grammars: reduction, normal forms, unique-assignment encoding",
               "abcat"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Decide whether a category string reduces to a target");
  reduce->add_option("string", ra.inline_string, "Category string, items separated by ';'");
  reduce->add_option("--file", ra.file, "Read the category string from a file");
  reduce->add_option("--target", ra.target, "Target category");
  reduce->add_flag("--all", ra.all, "List every category the whole string reduces to");
  reduce->add_option("--trees", ra.trees, "Print up to N reduction trees")->check(CLI::PositiveNumber);
  reduce->add_option("--format", ra.format, "Tree format")->check(CLI::IsMember({"text", "latex"}));
  reduce->add_flag("--oracle", ra.oracle, "Decide by exhaustive search instead of the chart");
  reduce->add_option("--cap", ra.cap, "Visited-string limit for --oracle")->check(CLI::PositiveNumber);
  reduce->add_flag("--reserved", ra.reserved, "Accept reserved primitive names (_l, _r, _...)");

  std::string grammar_path, out_path;
  auto* gnf = app.add_subcommand("gnf", "Convert a grammar to 2-GNF");
  gnf->add_option("grammar", grammar_path, "Grammar file")->required();
  gnf->add_option("-o,--output", out_path, "Output file (default: stdout)");

  bool assume_gnf2 = false;
  auto* encode = app.add_subcommand("encode", "Encode a grammar as a unique-assignment categorial grammar");
  encode->add_option("grammar", grammar_path, "Grammar file")->required();
  encode->add_option("-o,--output", out_path, "Bundle file (default: stdout)");
  encode->add_flag("--assume-gnf2", assume_gnf2, "Skip the 2-GNF conversion");

  std::vector<std::string> words;
  std::string via = "both";
  bool chars = false;
  auto* member = app.add_subcommand("member", "Decide membership of words in a grammar's language");
  member->add_option("grammar", grammar_path, "Grammar file")->required();
  member->add_option("words", words, "Words (whitespace-separated terminals)")->required();
  member->add_option("--via", via, "Decider")->check(CLI::IsMember({"cyk", "encoding", "both"}));
  member->add_flag("--chars", chars, "Read each word as one terminal per character");

  GadgetArgs ga;
  auto* gadget = app.add_subcommand("gadget", "Print a gadget category string");
  gadget->add_option("kind", ga.kind, "x, y, z, zprime, u or w")
      ->required()
      ->check(CLI::IsMember({"x", "y", "z", "zprime", "u", "w"}));
  gadget->add_option("--a", ga.a, "First category (x, z, zprime, u)");
  gadget->add_option("--b", ga.b, "Second category (y, z, zprime, u)");
  gadget->add_option("--t", ga.t, "Fresh primitive for x and y");
  gadget->add_option("--cats", ga.cats, "Comma-separated categories for w");
  gadget->add_option("--scope", ga.scope, "Name scope for the fresh primitives of w");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kInputError;
  }

  try {
    if (reduce->parsed()) return cmd_reduce(ra, out, err);
    if (gnf->parsed()) return cmd_gnf(grammar_path, out_path, out, err);
    if (encode->parsed()) return cmd_encode(grammar_path, out_path, assume_gnf2, out, err);
    if (member->parsed()) return cmd_member(grammar_path, words, via, chars, out);
    return cmd_gadget(ga, out);
  } catch (const BudgetExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCapOrMismatch;
  } catch (const Error& e) {
    err << e.kind() << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace abcat::cli
