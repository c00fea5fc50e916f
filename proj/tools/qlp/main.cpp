#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qlp/distribution.hpp"
#include "qlp/errors.hpp"
#include "qlp/example31.hpp"
#include "qlp/json_io.hpp"
#include "qlp/synth.hpp"

namespace {

using namespace qlp;

struct Options {
  std::string format = "text";
  std::string out_dir;
};

// decimal when terminating, "p/q" otherwise
std::string short_string(const Rational& r) {
  if (auto d = decimal_string(r)) return *d;
  return fraction_string(r);
}

void emit(const Options& opt, const std::string& name,
          const std::string& json_doc, const std::string& text_doc) {
  const std::string& doc = opt.format == "json" ? json_doc : text_doc;
  if (opt.out_dir.empty()) {
    std::cout << doc;
    return;
  }
  std::filesystem::create_directories(opt.out_dir);
  const std::string path = opt.out_dir + "/" + name +
                           (opt.format == "json" ? ".json" : ".txt");
  write_text_file(path, doc);
  std::cout << "wrote " << path << "\n";
}

std::string aligned(std::vector<std::pair<std::string, std::string>> rows) {
  std::size_t w = 0;
  for (const auto& [l, r] : rows) w = std::max(w, l.size());
  std::ostringstream out;
  for (const auto& [l, r] : rows)
    out << l << std::string(w - l.size() + 2, ' ') << r << "\n";
  return out.str();
}

std::string smap_text(const SMap& p) {
  const Lattice& L = *p.lattice();
  std::ostringstream out;
  out << "arity " << p.arity() << " on " << L.size() << " elements, "
      << p.cell_count() << " cells\n";
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::size_t i = 0; i < p.cell_count(); ++i)
    rows.emplace_back(tuple_label(L, tuple_at(L.size(), p.arity(), i)),
                      pretty_string(p.value_at(i)));
  out << aligned(std::move(rows));
  return out.str();
}

std::string completion_text(const Completion& c, const Lattice& L) {
  std::ostringstream out;
  switch (c.status) {
    case Completion::Status::complete:
      out << "status: complete\n";
      break;
    case Completion::Status::inconsistent:
      out << "status: inconsistent\n";
      break;
    case Completion::Status::underdetermined:
      out << "status: underdetermined\n";
      break;
  }
  if (!c.conflict.empty()) out << "conflict:\n" << c.conflict << "\n";
  if (!c.free_tuples.empty()) {
    out << "free tuples (" << c.free_tuples.size() << "):\n";
    for (const Tuple& t : c.free_tuples) out << "  " << tuple_label(L, t) << "\n";
  }
  if (c.table) out << "table:\n" << smap_text(*c.table);
  if (!c.revalidation.items.empty())
    out << "revalidation:\n" << c.revalidation.to_text();
  return out.str();
}

std::string feasibility_text(const FeasibilityResult& r) {
  std::ostringstream out;
  out << "feasible: " << (r.feasible ? "yes" : "no") << "\n";
  if (r.witness) out << "witness:\n" << smap_text(*r.witness);
  if (r.certificate) out << "certificate:\n" << certificate_text(*r.certificate);
  if (!r.note.empty()) out << "note: " << r.note << "\n";
  return out.str();
}

std::string commutativity_text(const CommutativityReport& r, const Lattice& L) {
  std::ostringstream out;
  if (r.commutative) {
    out << "commutative\n";
    return out.str();
  }
  out << "non-commutative: " << r.violations.size() << " violating pairs\n";
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& v : r.violations)
    rows.emplace_back(
        tuple_label(L, v.tuple) + " = " + pretty_string(v.value),
        tuple_label(L, v.permuted) + " = " + pretty_string(v.permuted_value));
  out << aligned(std::move(rows));
  return out.str();
}

std::string classical_text(const ClassicalModel& m) {
  std::ostringstream out;
  out << "outcomes: " << m.outcomes().size() << "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  for (std::size_t i = 0; i < m.outcomes().size(); ++i) {
    std::string o = "(";
    for (std::size_t k = 0; k < m.outcomes()[i].size(); ++k) {
      if (k) o += ",";
      o += short_string(m.outcomes()[i][k]);
    }
    rows.emplace_back(o + ")", pretty_string(m.masses()[i]));
  }
  out << aligned(std::move(rows));
  out << "verification:\n" << m.verification().to_text();
  return out.str();
}

LatticePtr load_lattice(const std::string& arg) {
  if (auto sh = lattice_shorthand(arg)) return *sh;
  return parse_lattice(read_text_file(arg));
}

std::vector<Rational> parse_rationals(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

struct DistInputs {
  SMap map;
  std::vector<std::string> names;
  std::vector<Observable> xs;
};

DistInputs load_dist(const std::string& smap_path, const std::string& obs_path,
                     const std::string& order) {
  SMap p = parse_smap(read_text_file(smap_path));
  auto named = parse_observables(read_text_file(obs_path), p.lattice());
  std::vector<std::string> names;
  std::vector<Observable> xs;
  if (order.empty()) {
    for (auto& [name, x] : named) {
      names.push_back(name);
      xs.push_back(std::move(x));
    }
  } else {
    for (const std::string& want : split_names(order)) {
      bool found = false;
      for (auto& [name, x] : named)
        if (name == want) {
          names.push_back(name);
          xs.push_back(x);
          found = true;
          break;
        }
      if (!found)
        throw StructuralError("--order names unknown observable \"" + want +
                              "\"");
    }
  }
  return {std::move(p), std::move(names), std::move(xs)};
}

std::string value_json(const std::vector<std::string>& names,
                       const std::vector<Rational>& at,
                       const std::vector<int>& drop, const Rational& value) {
  std::ostringstream out;
  out << "{\n  \"order\": [";
  for (std::size_t i = 0; i < names.size(); ++i)
    out << (i ? ", " : "") << "\"" << names[i] << "\"";
  out << "],\n  \"at\": [";
  for (std::size_t i = 0; i < at.size(); ++i)
    out << (i ? ", " : "") << "\"" << fraction_string(at[i]) << "\"";
  out << "],\n";
  if (!drop.empty()) {
    out << "  \"drop\": [";
    for (std::size_t i = 0; i < drop.size(); ++i)
      out << (i ? ", " : "") << drop[i] + 1;
    out << "],\n";
  }
  out << "  \"value\": \"" << fraction_string(value) << "\"\n}\n";
  return out.str();
}

// The example the tool verifies: the bundled partial table on MO3 and the
// observables x1, x2, x3.  Returns the full pipeline report.
Report run_example31(bool raw, bool skip_classical) {
  Report rep;
  LatticePtr L = example31::mo3();
  Completion c = complete(example31::partial(raw));
  const bool completed = c.status == Completion::Status::complete;
  rep.add("completion", completed, completed ? "" : c.conflict);
  if (!completed) return rep;

  const SMap& p = *c.table;
  Report v = validate(p);
  rep.add("validate", v.ok());
  Report props = check_propositions(p);
  rep.add("propositions", props.ok());

  auto xs = example31::observables(L);
  JointDistribution d123(p, {xs[0], xs[1], xs[2]});
  JointDistribution d213(p, {xs[1], xs[0], xs[2]});
  JointDistribution d321(p, {xs[2], xs[1], xs[0]});
  auto expect = [&rep](const std::string& name, const Rational& got,
                       const Rational& want) {
    rep.add(name, got == want,
            got == want ? "" : "got " + pretty_string(got) + ", expected " +
                                   pretty_string(want));
  };
  const std::vector<Rational> ones{1, 1, 1};
  expect("F[x1,x2,x3](1,1,1) = 3/10", F(d123, ones), Rational(3, 10));
  expect("F[x2,x1,x3](1,1,1) = 1/5", F(d213, ones), Rational(1, 5));
  expect("F[x3,x2,x1](1,1,1) = 29/100", F(d321, ones), Rational(29, 100));

  State nu = derived_state(p);
  expect("nu(a) = 3/10", nu.value(L->require_label("a")), Rational(3, 10));
  expect("nu(b) = 2/5", nu.value(L->require_label("b")), Rational(2, 5));
  expect("nu(c) = 1/2", nu.value(L->require_label("c")), Rational(1, 2));

  // p(1, x2(r2), x3(r3)) must not depend on the order of the last two slots
  JointDistribution d132(p, {xs[0], xs[2], xs[1]});
  bool symmetric = true;
  std::string witness;
  for (const Rational& r2 : evaluation_grid(xs[1]))
    for (const Rational& r3 : evaluation_grid(xs[2])) {
      Rational lhs = marginal_F(d123, {0, r2, r3}, {0});
      Rational rhs = marginal_F(d132, {0, r3, r2}, {0});
      if (lhs != rhs && symmetric) {
        symmetric = false;
        witness = "at (r2,r3) = (" + short_string(r2) + "," +
                  short_string(r3) + "): " + fraction_string(lhs) +
                  " != " + fraction_string(rhs);
      }
    }
  rep.add("marginal symmetry over coordinate 1", symmetric, witness);

  if (skip_classical) {
    rep.add("classical model", true, "skipped");
  } else {
    try {
      ClassicalModel m = classical_model(d123);
      rep.add("classical model", m.verification().ok());
    } catch (const ModelError& e) {
      rep.add("classical model", false, e.what());
    }
  }
  return rep;
}

int report_exit(const Report& rep) { return rep.ok() ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "orthomodular-lattice probability: validation, completion, synthesis "
      "and distribution reports.  QLP_SEED is reserved and currently "
      "ignored."};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", opt.out_dir, "write reports into this directory");

  std::function<int()> action;

  auto* lattice = app.add_subcommand("lattice", "build or check lattices");
  lattice->require_subcommand(1);
  {
    auto* check = lattice->add_subcommand("check", "run the axiom checks");
    auto path = std::make_shared<std::string>();
    check->add_option("file", *path, "lattice document or shorthand")
        ->required();
    check->callback([&, path] {
      action = [&, path] {
        auto sh = lattice_shorthand(*path);
        LatticeData data =
            sh ? (*sh)->to_data() : parse_lattice_data(read_text_file(*path));
        OmlCheck res = check_oml(data);
        emit(opt, "report", report_json(res.report), res.report.to_text());
        return res.report.ok() ? 0 : 1;
      };
    });

    auto* make = lattice->add_subcommand("make", "generate mo:<n> or boolean:<k>");
    auto name = std::make_shared<std::string>();
    make->add_option("shorthand", *name, "mo:<n> or boolean:<k>")->required();
    make->callback([&, name] {
      action = [&, name] {
        auto L = lattice_shorthand(*name);
        if (!L)
          throw StructuralError("\"" + *name +
                                "\" is neither \"mo:<n>\" nor \"boolean:<k>\"");
        const std::string doc = lattice_json(**L);
        if (opt.out_dir.empty()) {
          std::cout << doc;
        } else {
          std::filesystem::create_directories(opt.out_dir);
          const std::string path = opt.out_dir + "/lattice.json";
          write_text_file(path, doc);
          std::cout << "wrote " << path << "\n";
        }
        return 0;
      };
    });
  }

  auto* smap = app.add_subcommand("smap", "validate, complete or synthesize");
  smap->require_subcommand(1);
  {
    auto* val = smap->add_subcommand("validate", "check the s-map axioms");
    auto val_path = std::make_shared<std::string>();
    val->add_option("file", *val_path, "total s-map document")->required();
    val->callback([&, val_path] {
      action = [&, val_path] {
        Report r = validate(parse_smap(read_text_file(*val_path)));
        emit(opt, "report", report_json(r), r.to_text());
        return report_exit(r);
      };
    });

    auto* comp = smap->add_subcommand("complete", "close a partial table");
    auto comp_path = std::make_shared<std::string>();
    comp->add_option("file", *comp_path, "partial s-map document")->required();
    comp->callback([&, comp_path] {
      action = [&, comp_path] {
        PartialSMap q = parse_partial_smap(read_text_file(*comp_path));
        Completion c = complete(q);
        emit(opt, "completion", completion_json(c, *q.lattice()),
             completion_text(c, *q.lattice()));
        return c.status == Completion::Status::complete ? 0 : 1;
      };
    });

    auto* props = smap->add_subcommand("props", "check the derived propositions");
    auto props_path = std::make_shared<std::string>();
    props->add_option("file", *props_path, "total s-map document")->required();
    props->callback([&, props_path] {
      action = [&, props_path] {
        Report r = check_propositions(parse_smap(read_text_file(*props_path)));
        emit(opt, "report", report_json(r), r.to_text());
        return report_exit(r);
      };
    });

    auto* synth = smap->add_subcommand(
        "synth", "find a witness or an infeasibility certificate");
    auto args = std::make_shared<std::vector<std::string>>();
    auto arity = std::make_shared<int>(0);
    synth->add_option("args", *args,
                      "lattice (file or shorthand), constraints file, and "
                      "optionally arity=<n>")
        ->expected(-2);
    synth->add_option("--arity", *arity, "tuple length");
    synth->callback([&, args, arity] {
      action = [&, args, arity] {
        std::string lattice_arg, constraints_path;
        int n = *arity;
        for (const std::string& a : *args) {
          if (a.rfind("arity=", 0) == 0) {
            n = std::stoi(a.substr(6));
          } else if (lattice_arg.empty()) {
            lattice_arg = a;
          } else if (constraints_path.empty()) {
            constraints_path = a;
          } else {
            throw StructuralError("unexpected argument \"" + a + "\"");
          }
        }
        if (lattice_arg.empty() || constraints_path.empty() || n == 0)
          throw StructuralError(
              "synth needs a lattice, a constraints file and an arity");
        LatticePtr L = load_lattice(lattice_arg);
        ConstraintSet cs =
            parse_constraints(read_text_file(constraints_path), L, n);
        FeasibilityResult r = synthesize(L, n, cs);
        emit(opt, "synthesis", feasibility_json(r), feasibility_text(r));
        return r.feasible ? 0 : 1;
      };
    });
  }

  auto* dist = app.add_subcommand("dist", "distribution-function reports");
  dist->require_subcommand(1);
  {
    auto add_common = [](CLI::App* cmd, auto files, auto order) {
      cmd->add_option("smap", files->first, "total s-map document")->required();
      cmd->add_option("observables", files->second, "observables document")
          ->required();
      cmd->add_option("--order", *order,
                      "comma-separated observable names, one per coordinate");
    };

    auto* f = dist->add_subcommand("F", "evaluate the distribution function");
    auto f_files = std::make_shared<std::pair<std::string, std::string>>();
    auto f_order = std::make_shared<std::string>();
    auto f_at = std::make_shared<std::string>();
    add_common(f, f_files, f_order);
    f->add_option("--at", *f_at, "comma-separated rationals r1,...,rn")
        ->required();
    f->callback([&, f_files, f_order, f_at] {
      action = [&, f_files, f_order, f_at] {
        DistInputs in = load_dist(f_files->first, f_files->second, *f_order);
        JointDistribution d(std::move(in.map), std::move(in.xs));
        std::vector<Rational> at = parse_rationals(*f_at);
        Rational v = F(d, at);
        emit(opt, "F", value_json(in.names, at, {}, v),
             "F = " + pretty_string(v) + "\n");
        return 0;
      };
    });

    auto* marg = dist->add_subcommand("marginal", "evaluate a marginal of F");
    auto m_files = std::make_shared<std::pair<std::string, std::string>>();
    auto m_order = std::make_shared<std::string>();
    auto m_at = std::make_shared<std::string>();
    auto m_drop = std::make_shared<std::vector<int>>();
    add_common(marg, m_files, m_order);
    marg->add_option("--at", *m_at,
                     "comma-separated rationals; dropped slots are ignored")
        ->required();
    marg->add_option("--drop", *m_drop,
                     "1-based coordinates sent to their limit")
        ->required()
        ->delimiter(',');
    marg->callback([&, m_files, m_order, m_at, m_drop] {
      action = [&, m_files, m_order, m_at, m_drop] {
        DistInputs in = load_dist(m_files->first, m_files->second, *m_order);
        JointDistribution d(std::move(in.map), std::move(in.xs));
        std::vector<Rational> at = parse_rationals(*m_at);
        std::vector<int> drop;
        for (int i : *m_drop) drop.push_back(i - 1);
        Rational v = marginal_F(d, at, drop);
        emit(opt, "marginal", value_json(in.names, at, drop, v),
             "F = " + pretty_string(v) + "\n");
        return 0;
      };
    });

    auto* comm = dist->add_subcommand("commutativity",
                                      "permutation invariance of the joint");
    auto c_files = std::make_shared<std::pair<std::string, std::string>>();
    auto c_order = std::make_shared<std::string>();
    add_common(comm, c_files, c_order);
    comm->callback([&, c_files, c_order] {
      action = [&, c_files, c_order] {
        DistInputs in = load_dist(c_files->first, c_files->second, *c_order);
        JointDistribution d(std::move(in.map), std::move(in.xs));
        CommutativityReport r = check_commutativity(d);
        emit(opt, "commutativity", commutativity_json(r, *d.map().lattice()),
             commutativity_text(r, *d.map().lattice()));
        return r.commutative ? 0 : 1;
      };
    });

    auto* cls = dist->add_subcommand("classical",
                                     "the classical probability-space model");
    auto k_files = std::make_shared<std::pair<std::string, std::string>>();
    auto k_order = std::make_shared<std::string>();
    add_common(cls, k_files, k_order);
    cls->callback([&, k_files, k_order] {
      action = [&, k_files, k_order] {
        DistInputs in = load_dist(k_files->first, k_files->second, *k_order);
        JointDistribution d(std::move(in.map), std::move(in.xs));
        ClassicalModel m = classical_model(d);
        emit(opt, "classical", classical_model_json(m), classical_text(m));
        return m.verification().ok() ? 0 : 1;
      };
    });
  }

  auto* verify = app.add_subcommand("verify", "run the bundled reproduction");
  verify->require_subcommand(1);
  {
    auto* ex = verify->add_subcommand("example31", "the worked example");
    auto raw = std::make_shared<bool>(false);
    auto skip = std::make_shared<bool>(false);
    ex->add_flag("--raw", *raw, "keep the flawed listing (expected to fail)");
    ex->add_flag("--skip-classical", *skip, "skip the classical-model stage");
    ex->callback([&, raw, skip] {
      action = [&, raw, skip] {
        Report rep = run_example31(*raw, *skip);
        emit(opt, "verify_example31", report_json(rep), rep.to_text());
        if (!rep.ok())
          for (const auto& it : rep.items)
            if (!it.passed) {
              std::cout << "first failing check: " << it.name << "\n";
              break;
            }
        return report_exit(rep);
      };
    });
  }

  std::function<void(CLI::App*)> allow_parent_flags = [&](CLI::App* cmd) {
    cmd->fallthrough();
    for (CLI::App* sub : cmd->get_subcommands({})) allow_parent_flags(sub);
  };
  allow_parent_flags(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
