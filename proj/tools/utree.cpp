// utree: exact U/U_k/W-polynomials, PTE sequence solving, PTE-tree
// construction, recognition and end-to-end verification.

#include <climits>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "utree/census.hpp"
#include "utree/invariants.hpp"
#include "utree/io.hpp"
#include "utree/pte.hpp"
#include "utree/tree.hpp"
#include "utree/verify.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text << "\n";
  }
}

utree::EnumOptions enum_options(int threads) {
  utree::EnumOptions opts;
  opts.threads = threads;
  if (const char* env = std::getenv("UTREE_BUDGET")) {
    const int edges = std::stoi(env);
    if (edges < 0) throw std::invalid_argument("UTREE_BUDGET must be >= 0");
    opts.max_edges = edges;
    if (edges < 62)
      opts.max_subsets =
          std::max<std::uint64_t>(opts.max_subsets, std::uint64_t(1) << edges);
  }
  return opts;
}

std::vector<int> to_int_vector(const std::vector<long long>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (long long x : v) {
    if (x < INT_MIN || x > INT_MAX)
      throw std::invalid_argument("entry too large");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::string certificates_json(const utree::SearchResult& r) {
  std::ostringstream os;
  os << "{\"certificates\":[";
  for (std::size_t i = 0; i < r.certificates.size(); ++i) {
    if (i) os << ',';
    os << utree::certificate_to_json(r.certificates[i]);
  }
  os << "],\"complete\":" << (r.complete ? "true" : "false") << '}';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PTE trees and restricted U-polynomials, exactly"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "cap internal parallelism")
      ->capture_default_str();

  int exit_code = kExitTrue;

  // ---------------------------------------------------------------- pte ----
  auto* pte = app.add_subcommand("pte", "PTE sequence operations");
  pte->require_subcommand(1);

  std::string seq_a, seq_b;
  int degree_k = 1;

  auto* check = pte->add_subcommand("check", "verify a =_k b");
  check->add_option("--a", seq_a, "first sequence")->required();
  check->add_option("--b", seq_b, "second sequence")->required();
  check->add_option("--k", degree_k, "degree to verify")->required();
  check->callback([&] {
    utree::IntSequence a(utree::parse_int_list(seq_a));
    utree::IntSequence b(utree::parse_int_list(seq_b));
    const bool ok = utree::is_pte(a, b, degree_k);
    const auto deg =
        ok ? utree::pte_degree(a, b) : std::optional<int>{};
    std::ostringstream os;
    os << "{\"a\":" << utree::sequence_to_json(a)
       << ",\"b\":" << utree::sequence_to_json(b) << ",\"degree\":"
       << (deg ? std::to_string(*deg) : std::string("null"))
       << ",\"verified\":" << (ok ? "true" : "false") << '}';
    std::cout << os.str() << "\n";
    exit_code = ok ? kExitTrue : kExitFalse;
  });

  auto* degree = pte->add_subcommand("degree", "largest k with a =_k b");
  degree->add_option("--a", seq_a, "first sequence")->required();
  degree->add_option("--b", seq_b, "second sequence")->required();
  degree->callback([&] {
    utree::IntSequence a(utree::parse_int_list(seq_a));
    utree::IntSequence b(utree::parse_int_list(seq_b));
    const auto deg = utree::pte_degree(a, b);
    if (!deg) {
      std::cout << "equal-multisets\n";
      exit_code = kExitFalse;
    } else {
      std::cout << *deg << "\n";
      exit_code = *deg >= 1 ? kExitTrue : kExitFalse;
    }
  });

  auto* prouhet_cmd =
      pte->add_subcommand("prouhet", "Thue-Morse certificate of degree k");
  prouhet_cmd->add_option("--k", degree_k, "degree")->required();
  prouhet_cmd->callback([&] {
    std::cout << utree::certificate_to_json(utree::prouhet(degree_k)) << "\n";
  });

  int search_n = 2;
  long long search_max = 0;
  auto* search = pte->add_subcommand("search", "exhaustive PTE search");
  search->add_option("--n", search_n, "sequence size")->required();
  search->add_option("--k", degree_k, "minimum degree")->required();
  search->add_option("--max", search_max, "largest entry")->required();
  search->callback([&] {
    const auto r = utree::search_pte(search_n, degree_k, search_max);
    std::cout << certificates_json(r) << "\n";
    exit_code = r.certificates.empty() ? kExitFalse : kExitTrue;
  });

  int multi_j = 2;
  auto* multi = pte->add_subcommand("multi", "j pairwise =_k sequences");
  multi->add_option("--j", multi_j, "number of sequences")->required();
  multi->add_option("--k", degree_k, "degree")->required();
  multi->callback([&] {
    const auto seqs = utree::multi_pte(multi_j, degree_k);
    std::ostringstream os;
    os << "{\"k\":" << degree_k << ",\"sequences\":[";
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      if (i) os << ',';
      os << utree::sequence_to_json(seqs[i]);
    }
    os << "]}";
    std::cout << os.str() << "\n";
  });

  // --------------------------------------------------------------- tree ----
  auto* tree = app.add_subcommand("tree", "tree construction and analysis");
  tree->require_subcommand(1);

  std::string tree_path, out_path, opt_p, opt_s;
  int opt_alpha = -1;
  bool want_dot = false;

  auto* build = tree->add_subcommand(
      "build", "build T_alpha(p) (--alpha --p) or T(p,s) (--p --s)");
  build->add_option("--alpha", opt_alpha, "alpha for a PTE tree");
  build->add_option("--p", opt_p, "comma-separated p")->required();
  build->add_option("--s", opt_s, "comma-separated s (T(p,s) form)");
  build->add_flag("--dot", want_dot, "emit DOT instead of JSON");
  build->add_option("--out", out_path, "write to file instead of stdout");
  build->callback([&] {
    const auto p = to_int_vector(utree::parse_int_list(opt_p));
    std::optional<utree::Tree> t;
    if (opt_alpha >= 0 && opt_s.empty()) {
      t = utree::build_pte_tree(utree::PteShape(opt_alpha, p));
    } else if (opt_alpha < 0 && !opt_s.empty()) {
      const auto s = to_int_vector(utree::parse_int_list(opt_s));
      t = utree::build_t_tree(p, s);
    } else {
      throw std::invalid_argument("use either --alpha --p or --p --s");
    }
    emit(want_dot ? utree::tree_to_dot(*t) : utree::tree_to_json(*t),
         out_path);
  });

  auto* labels = tree->add_subcommand("labels", "edge label multiset");
  labels->add_option("--tree", tree_path, "tree JSON file")->required();
  labels->callback([&] {
    const auto wt = utree::tree_from_json(read_file(tree_path));
    const auto ls = utree::label_multiset(wt.tree());
    std::ostringstream os;
    os << "{\"labels\":[";
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (i) os << ',';
      os << ls[i];
    }
    os << "]}";
    std::cout << os.str() << "\n";
  });

  auto* centroid_cmd = tree->add_subcommand("centroid", "centroid vertex set");
  centroid_cmd->add_option("--tree", tree_path, "tree JSON file")->required();
  centroid_cmd->callback([&] {
    const auto wt = utree::tree_from_json(read_file(tree_path));
    const auto c = utree::centroid(wt.tree());
    std::ostringstream os;
    os << "{\"centroid\":[";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ',';
      os << c[i];
    }
    os << "]}";
    std::cout << os.str() << "\n";
  });

  auto* recognize = tree->add_subcommand("recognize", "PTE-tree recognition");
  recognize->add_option("--tree", tree_path, "tree JSON file")->required();
  recognize->callback([&] {
    const auto wt = utree::tree_from_json(read_file(tree_path));
    const auto shape = utree::recognize_pte_tree(wt.tree());
    if (shape) {
      std::cout << utree::shape_to_json(*shape) << "\n";
    } else {
      std::cout << "not-PTE\n";
      exit_code = kExitFalse;
    }
  });

  auto* dot = tree->add_subcommand("dot", "DOT export, core edges bold");
  dot->add_option("--tree", tree_path, "tree JSON file")->required();
  dot->add_option("--out", out_path, "write to file instead of stdout");
  dot->callback([&] {
    emit(utree::tree_to_dot(utree::tree_from_json(read_file(tree_path))),
         out_path);
  });

  // -------------------------------------------------------------- upoly ----
  auto* upoly = app.add_subcommand("upoly", "U/U_k polynomial operations");
  upoly->require_subcommand(1);

  std::string poly_path, poly_path_b, tree_path_b, partition_arg;
  int opt_k = -1;
  bool want_hash = false;

  auto* compute = upoly->add_subcommand("compute", "U or U_k of a tree");
  compute->add_option("--tree", tree_path, "tree JSON file")->required();
  compute->add_option("--k", opt_k, "restriction level (full U if omitted)");
  compute->add_flag("--hash", want_hash, "print the content hash only");
  compute->add_option("--out", out_path, "write to file instead of stdout");
  compute->callback([&] {
    const auto wt = utree::tree_from_json(read_file(tree_path));
    const auto opts = enum_options(threads);
    const auto poly = opt_k >= 0
                          ? utree::u_k_polynomial(wt.tree(), opt_k, opts)
                          : utree::u_polynomial(wt.tree(), opts);
    emit(want_hash ? poly.content_hash() : poly.canonical_json(), out_path);
  });

  auto* coeff = upoly->add_subcommand("coeff", "coefficient of one monomial");
  coeff->add_option("--tree", tree_path, "tree JSON file")->required();
  coeff->add_option("--partition", partition_arg, "partition, e.g. 8,3,2,2")
      ->required();
  coeff->add_option("--k", opt_k, "restriction level (full U if omitted)");
  coeff->callback([&] {
    const auto wt = utree::tree_from_json(read_file(tree_path));
    const utree::Partition target(
        to_int_vector(utree::parse_int_list(partition_arg)));
    utree::BigInt c = 0;
    if (opt_k < 0 || static_cast<int>(target.size()) <= opt_k + 1)
      c = utree::u_coefficient_direct(wt.tree(), target,
                                      enum_options(threads));
    std::ostringstream os;
    os << "{\"partition\":[";
    for (std::size_t i = 0; i < target.parts().size(); ++i) {
      if (i) os << ',';
      os << target.parts()[i];
    }
    os << "],\"coeff\":\"" << c << "\"}";
    std::cout << os.str() << "\n";
    exit_code = c != 0 ? kExitTrue : kExitFalse;
  });

  auto* hash = upoly->add_subcommand("hash", "stable content hash");
  hash->add_option("--tree", tree_path, "tree JSON file");
  hash->add_option("--k", opt_k, "restriction level (full U if omitted)");
  hash->add_option("--poly", poly_path, "polynomial JSON file");
  hash->callback([&] {
    utree::PartitionPolynomial poly;
    if (!poly_path.empty()) {
      poly = utree::polynomial_from_json(read_file(poly_path));
    } else if (!tree_path.empty()) {
      const auto wt = utree::tree_from_json(read_file(tree_path));
      const auto opts = enum_options(threads);
      poly = opt_k >= 0 ? utree::u_k_polynomial(wt.tree(), opt_k, opts)
                        : utree::u_polynomial(wt.tree(), opts);
    } else {
      throw std::invalid_argument("hash needs --tree or --poly");
    }
    std::cout << poly.content_hash() << "\n";
  });

  auto* signature =
      upoly->add_subcommand("signature", "PTE signature from a U_1-polynomial");
  signature->add_option("--poly", poly_path, "U_1 polynomial JSON file");
  signature->add_option("--tree", tree_path, "tree JSON file (U_1 computed)");
  signature->callback([&] {
    utree::PartitionPolynomial u1;
    if (!poly_path.empty()) {
      u1 = utree::polynomial_from_json(read_file(poly_path));
    } else if (!tree_path.empty()) {
      const auto wt = utree::tree_from_json(read_file(tree_path));
      u1 = utree::u_k_polynomial(wt.tree(), 1, enum_options(threads));
    } else {
      throw std::invalid_argument("signature needs --poly or --tree");
    }
    if (u1.empty()) throw std::invalid_argument("empty polynomial");
    const int n = static_cast<int>(u1.terms().begin()->first.first.sum());
    const auto sig = utree::signature_from_u1(u1, n);
    if (sig) {
      std::cout << utree::signature_to_json(*sig) << "\n";
    } else {
      std::cout << "not-PTE\n";
      exit_code = kExitFalse;
    }
  });

  auto* diff = upoly->add_subcommand("diff", "canonical term diff");
  diff->add_option("--tree-a", tree_path, "first tree JSON file");
  diff->add_option("--tree-b", tree_path_b, "second tree JSON file");
  diff->add_option("--k", opt_k, "restriction level (full U if omitted)");
  diff->add_option("--poly-a", poly_path, "first polynomial JSON file");
  diff->add_option("--poly-b", poly_path_b, "second polynomial JSON file");
  diff->callback([&] {
    utree::PartitionPolynomial a, b;
    if (!poly_path.empty() && !poly_path_b.empty()) {
      a = utree::polynomial_from_json(read_file(poly_path));
      b = utree::polynomial_from_json(read_file(poly_path_b));
    } else if (!tree_path.empty() && !tree_path_b.empty()) {
      const auto opts = enum_options(threads);
      const auto ta = utree::tree_from_json(read_file(tree_path));
      const auto tb = utree::tree_from_json(read_file(tree_path_b));
      a = opt_k >= 0 ? utree::u_k_polynomial(ta.tree(), opt_k, opts)
                     : utree::u_polynomial(ta.tree(), opts);
      b = opt_k >= 0 ? utree::u_k_polynomial(tb.tree(), opt_k, opts)
                     : utree::u_polynomial(tb.tree(), opts);
    } else {
      throw std::invalid_argument(
          "diff needs --tree-a/--tree-b or --poly-a/--poly-b");
    }
    const auto d = utree::poly_diff(a, b);
    std::ostringstream os;
    os << "{\"equal\":" << (d.empty() ? "true" : "false") << ",\"diff\":[";
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) os << ',';
      os << "{\"partition\":[";
      for (std::size_t j = 0; j < d[i].partition.parts().size(); ++j) {
        if (j) os << ',';
        os << d[i].partition.parts()[j];
      }
      os << "],\"ypow\":" << d[i].y_grade << ",\"a\":\"" << d[i].lhs
         << "\",\"b\":\"" << d[i].rhs << "\"}";
    }
    os << "]}";
    std::cout << os.str() << "\n";
    exit_code = d.empty() ? kExitTrue : kExitFalse;
  });

  // ------------------------------------------------------------- verify ----
  std::string verify_p, verify_p2;
  int verify_alpha = 1, verify_k = 1, verify_level = -1;
  auto* verify = app.add_subcommand(
      "verify", "degree-k pair gives equal U_(k+1), distinct U_(k+2)");
  verify->add_option("--alpha", verify_alpha, "alpha")->required();
  verify->add_option("--p", verify_p, "first sequence")->required();
  verify->add_option("--p2", verify_p2, "second sequence")->required();
  verify->add_option("--k", verify_k, "claimed degree")->required();
  verify->add_option("--max-level", verify_level,
                     "largest U_m to compare (default k+2)");
  verify->callback([&] {
    const utree::PteShape sa(verify_alpha,
                             to_int_vector(utree::parse_int_list(verify_p)));
    const utree::PteShape sb(verify_alpha,
                             to_int_vector(utree::parse_int_list(verify_p2)));
    std::optional<int> level;
    if (verify_level >= 0) level = verify_level;
    const auto rep = utree::verify_encode(sa, sb, level, enum_options(threads));
    if (rep.degree != verify_k)
      std::cerr << "note: measured degree " << rep.degree
                << " differs from claimed " << verify_k << "\n";
    for (const auto& [phase, seconds] : rep.timings)
      std::cerr << "timing " << phase << " " << seconds << "s\n";
    std::cout << utree::report_to_json(rep) << "\n";
    exit_code =
        (rep.verified && rep.degree == verify_k) ? kExitTrue : kExitFalse;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}
