// stabgrp: invariants of stabilized fundamental groups of branch curve
// complements.
//
//   stabgrp invariants --template cp1xcp1 --p 2 --q 3
//   stabgrp verify --suite halftwists --n 5 --seed 7
//   stabgrp vankampen data/conic.json --projective
//   stabgrp catalog [--name k3 --k 4 --variant quartic]

#include <iostream>

#include "CLI11.hpp"
#include "stabgrp/cli.hpp"

namespace {

struct ParamOptions {
  std::map<std::string, int> values;
  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App* app) {
    for (const char* k : {"p", "q", "a", "b", "k", "m"}) {
      values[k] = 0;
      opts[k] = app->add_option(std::string("--") + k, values[k], std::string("surface parameter ") + k);
    }
  }
  std::map<std::string, int> given() const {
    std::map<std::string, int> out;
    for (const auto& [k, o] : opts)
      if (o->count()) out[k] = values.at(k);
    return out;
  }
};

int emit(const stab::CommandResult& r, const std::string& format) {
  if (format == "text") std::cout << stab::render_text(r.report);
  else std::cout << stab::canonical_dump(r.report);
  return r.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of stabilized fundamental groups of branch curve complements"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  auto* inv = app.add_subcommand("invariants", "diagram and homology invariants of a surface");
  stab::InvariantsArgs inv_args;
  ParamOptions inv_params;
  inv->add_option("--template", inv_args.tmpl, "catalog entry (cp1xcp1, f1, doublecover, cp2, ...)")->required();
  inv->add_option("--variant", inv_args.variant, "embedding variant for delpezzo and k3");
  inv_params.attach(inv);
  inv->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  stab::SuiteOptions suite;
  std::string ver_template;
  ver->add_option("--suite", suite.suite, "suite name")->required()->check(CLI::IsMember(stab::suite_names()));
  ver->add_option("--n", suite.ns, "strand counts for the braid suites (default 3..6)");
  ver->add_option("--seed", suite.seed, "random seed");
  ver->add_option("--template", ver_template, "diagram template for diagram suites")
      ->check(CLI::IsMember({"cp1xcp1", "f1", "doublecover"}));
  ver->add_option("--pmax", suite.pmax, "largest p (and q) in the parameter sweep");
  ver->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  auto* vk = app.add_subcommand("vankampen", "presentation and abelianization from a braid factorization");
  std::string vk_file, theta_file;
  stab::VanKampenArgs vk_args;
  vk->add_option("file", vk_file, "factorization JSON file")->required();
  vk->add_flag("--projective", vk_args.projective, "add the relation g1 ... gd = 1");
  vk->add_flag("--partial", vk_args.partial, "accept factorizations that are not Delta^2");
  vk->add_option("--stabilize-depth", vk_args.stabilize_depth, "conjugation depth for stabilization relations");
  vk->add_option("--theta", theta_file, "monodromy JSON file");
  vk->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  auto* cat = app.add_subcommand("catalog", "list catalog entries or show one");
  stab::InvariantsArgs cat_args;
  ParamOptions cat_params;
  cat->add_option("--name", cat_args.tmpl, "catalog entry");
  cat->add_option("--variant", cat_args.variant, "embedding variant");
  cat_params.attach(cat);
  cat->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (inv->parsed()) {
      inv_args.params = inv_params.given();
      return emit(stab::cmd_invariants(inv_args), format);
    }
    if (ver->parsed()) {
      if (!ver_template.empty()) suite.tmpl = stab::parse_template(ver_template);
      suite.workers = stab::worker_count();
      return emit(stab::cmd_verify(suite), format);
    }
    if (vk->parsed()) {
      try {
        vk_args.factorization = stab::read_json_file(vk_file);
        if (!theta_file.empty()) vk_args.theta = stab::read_json_file(theta_file);
      } catch (const stab::InputError& e) {
        return emit(stab::input_error("vankampen", e.what(), e.problems), format);
      }
      return emit(stab::cmd_vankampen(vk_args), format);
    }
    if (cat->parsed()) {
      std::optional<stab::InvariantsArgs> entry;
      if (!cat_args.tmpl.empty()) {
        cat_args.params = cat_params.given();
        entry = cat_args;
      }
      return emit(stab::cmd_catalog(entry), format);
    }
  } catch (const std::exception& e) {
    return emit(stab::input_error(app.get_subcommands().empty() ? "stabgrp" : app.get_subcommands()[0]->get_name(),
                                  e.what()),
                format);
  }
  return 2;
}
