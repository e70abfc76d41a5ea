#include "enriques/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace enriques;

void write_json(const json &j, const std::string &path) {
  const std::string text = j.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw input_error("cannot write \"" + path + "\"");
  out << text;
}

unsigned resolve_threads(int requested) {
  return requested > 0 ? static_cast<unsigned>(requested) : hardware_threads();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Combinatorial non-degeneracy of Enriques surfaces"};
  app.require_subcommand(1);

  RunOptions opt;
  std::string dataset, json_path, overlattice_file;
  int threads = 0;
  bool fast = false;

  auto *compute = app.add_subcommand("compute", "Fibrations, cnd and sequence censuses");
  compute->add_option("dataset", dataset, "Embedded dataset id or input file")->required();
  compute->add_flag("--sequences", opt.sequences, "List every isotropic sequence");
  compute->add_flag("--saturated", opt.saturated, "Census of saturated sequences");
  compute->add_flag("--extend", opt.extend, "Canonical extensions of saturated sequences");
  compute->add_flag("--fano", opt.fano, "Fano polarization report for each extension");
  compute->add_option("--extension-limit", opt.extension_limit,
                      "Extensions listed per sequence (0 = all)");
  compute->add_option("--json", json_path, "Write the machine-readable report ('-' = stdout)");
  compute->add_flag("--timing", opt.timing, "Include phase timings in the output");
  compute->add_option("--threads", threads, "Worker threads (default: all cores)");
  compute->add_flag("--fast", fast, "Enable per-type caps");

  auto *phi = app.add_subcommand("phi", "Combinatorial Phi-invariants of the dataset divisors");
  phi->add_option("dataset", dataset, "Embedded dataset id or input file")->required();
  phi->add_option("--threads", threads, "Worker threads (default: all cores)");

  auto *over = app.add_subcommand("overlattice", "Discriminant group and isotropic classes");
  over->add_option("file", overlattice_file, "Gram or generating-set document")->required();
  over->add_option("--json", json_path, "Write the machine-readable report ('-' = stdout)");

  auto *list = app.add_subcommand("list-datasets", "List the embedded datasets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*list) {
      for (const auto &id : embedded_dataset_ids()) {
        SurfaceDocument doc = load_document(id);
        std::cout << id << "\t" << doc.configuration.size() << " curves\t" << doc.title
                  << "\n";
      }
      return 0;
    }
    if (*over) {
      std::ifstream in(overlattice_file);
      if (!in)
        throw input_error("cannot read \"" + overlattice_file + "\"");
      std::stringstream ss;
      ss << in.rdbuf();
      OverlatticeReport rep = run_overlattice(parse_json_text(ss.str(), overlattice_file));
      if (json_path.empty())
        std::cout << render_text(rep);
      else
        write_json(to_json(rep), json_path);
      return 0;
    }
    opt.threads = resolve_threads(threads);
    opt.use_caps = fast;
    Dataset d = load_dataset(dataset);
    if (*phi) {
      if (d.divisors.empty())
        throw input_error("dataset \"" + d.id + "\" has no divisors section");
      HalfFiberSet hf = analyze_fibrations(d.configuration, d.basis, opt.threads);
      for (const auto &[name, v] : run_phi(d, hf))
        std::cout << "Phi(" << name << ") = " << to_string(v) << "\n";
      return 0;
    }
    RunReport rep = run(d, opt);
    if (json_path == "-") {
      write_json(to_json(rep, opt.timing), json_path);
      return 0;
    }
    std::cout << render_text(rep, opt.timing);
    if (!json_path.empty())
      write_json(to_json(rep, opt.timing), json_path);
    return 0;
  } catch (const input_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const invariant_error &e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
