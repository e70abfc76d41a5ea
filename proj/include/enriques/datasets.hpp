#pragma once

#include "enriques/errors.hpp"
#include "enriques/surface_model.hpp"

#include <string>
#include <vector>

namespace enriques {

struct Dataset {
  std::string id;
  std::string title;
  std::string notes;
  CurveConfiguration configuration;
  NumBasis basis;
  std::vector<DivisorSpec> divisors;
};

Dataset dataset_from_document(const SurfaceDocument &doc);

json parse_json_text(const std::string &text, const std::string &origin);

std::vector<std::string> embedded_dataset_ids();

bool is_embedded_dataset(const std::string &id);

SurfaceDocument load_document(const std::string &id_or_path);

Dataset load_dataset(const std::string &id_or_path);

} // namespace enriques
