#pragma once

// JSON forms of the public records.  Floats are emitted with 17 significant
// digits so every document re-parses bit-identically.

#include <wplab/fit.hpp>
#include <wplab/group.hpp>
#include <wplab/pairing.hpp>
#include <wplab/strip.hpp>

#include <json.hpp>

namespace wplab::serialize {

using json = nlohmann::ordered_json;

json surface_to_json(const group::SurfaceSpec& spec);
group::SurfaceSpec surface_from_json(const json& j);

json fourier_to_json(const strip::FourierQD& phi);
strip::FourierQD fourier_from_json(const json& j);

json pairing_to_json(const pairing::PairingEstimate& e);
json series_to_json(const pairing::SeriesReport& r);
json variation_to_json(const strip::VariationReport& r);
json fit_to_json(const cli::FitResult& r);

// %.17g rendering used for every float field in CLI output
std::string format_double(double x);

}  // namespace wplab::serialize
