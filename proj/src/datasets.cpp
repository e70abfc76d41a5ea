#include "enriques/datasets.hpp"

#include "enriques/embedded_datasets.hpp"

#include <fstream>
#include <sstream>

namespace enriques {

Dataset dataset_from_document(const SurfaceDocument &doc) {
  Dataset d;
  d.id = doc.id;
  d.title = doc.title;
  d.notes = doc.notes;
  d.configuration = doc.configuration;
  d.basis = load_basis(doc.configuration, doc.basis_rows, doc.notes);
  d.divisors = doc.divisors;
  return d;
}

json parse_json_text(const std::string &text, const std::string &origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw input_error(origin + ": " + e.what());
  }
}

std::vector<std::string> embedded_dataset_ids() {
  std::vector<std::string> ids;
  for (const auto &[id, body] : embedded_dataset_sources())
    ids.emplace_back(id);
  return ids;
}

bool is_embedded_dataset(const std::string &id) {
  for (const auto &[name, body] : embedded_dataset_sources())
    if (name == id)
      return true;
  return false;
}

SurfaceDocument load_document(const std::string &id_or_path) {
  for (const auto &[id, body] : embedded_dataset_sources())
    if (id == id_or_path)
      return parse_document(parse_json_text(std::string(body), std::string(id)),
                            std::string(id));
  std::ifstream in(id_or_path);
  if (!in)
    throw input_error("unknown dataset \"" + id_or_path +
                      "\" (not an embedded id or a readable file)");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(parse_json_text(ss.str(), id_or_path), id_or_path);
}

Dataset load_dataset(const std::string &id_or_path) {
  return dataset_from_document(load_document(id_or_path));
}

} // namespace enriques
