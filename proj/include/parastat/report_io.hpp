#pragma once

// JSON/CSV serialization of reports. Floats use 17 significant digits and
// keys keep insertion order, so identical runs give identical bytes.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "parastat/algebra.hpp"
#include "parastat/fock.hpp"
#include "parastat/group.hpp"
#include "parastat/jc.hpp"
#include "parastat/pbf.hpp"

namespace parastat {

using Json = nlohmann::ordered_json;

std::string format_double(double v);
std::string format_complex(cplx v);  // "re+imj"
/// Parses "1.5", "0.3-2j", "2j", "-1e-3+4.5j"; throws ArgumentError.
cplx parse_complex(std::string_view s);

Json exponent_matrix_json(const Bicharacter& theta);
Json degrees_json(const DegreeAssignment& deg);
Json cyclotomic_json(const CyclotomicInt& c);

/// Counts, every bicharacter with its commutation flag, R coefficients and
/// quasitriangularity flags.
Json classification_json(const FiniteAbelianGroup& g, const EnumerationLimits& limits = {});

Json relation_report_json(const RelationReport& r, double tol);
Json grading_report_json(const GradingReport& r);
Json factor_search_json(const FactorSearchResult& r);
Json ladder_json(const PBFFockRep& rep);
Json submodule_basis_json(const FockSubmodule& sub, const GreenAnsatzRep& rep);

/// generator,bra,ket,re,im[,ref,diff]; reference columns are filled for the
/// single-mode paraboson b1+/b1- elements when `reference_p` > 0.
std::string matrix_elements_csv(const GeneratorMap& gens, int reference_p = 0);
std::string spectrum_csv(const std::vector<double>& values);
std::string dynamics_csv(const QuenchResult& q);

/// Dumps with two-space indent and a trailing newline.
std::string dump(const Json& j);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace parastat
