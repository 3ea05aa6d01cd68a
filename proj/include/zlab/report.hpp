#pragma once

#include <string>

#include <json.hpp>

#include "zlab/analytic_checks.hpp"
#include "zlab/diophantine.hpp"
#include "zlab/hurwitz_weights.hpp"
#include "zlab/laplace.hpp"
#include "zlab/prime_weights.hpp"
#include "zlab/relations.hpp"
#include "zlab/weights.hpp"

namespace zlab {

using json = nlohmann::json;

// Every serialized artifact carries {"schema": <name>, "version": kSchemaVersion}.
inline constexpr int kSchemaVersion = 1;

// Shortest decimal string that reads back to the same double.
std::string dec(double x);
std::string dec(cplx z);  // "re,im"
double parse_double(const std::string& text);
cplx parse_cplx(const std::string& text);

json to_json(const RelationCertificate& c);
RelationCertificate certificate_from_json(const json& j);

json to_json(const WeightAssignment& w);
WeightAssignment weights_from_json(const json& j);

json to_json(const KernelGrid& g);
KernelGrid kernel_from_json(const json& j);
std::string kernel_csv(const KernelGrid& g);

json to_json(const ApproximationReport& r);
json to_json(const CasselsSet& c);
json to_json(const RelationSearch& r);
json to_json(const ShiftProblem& p, const ShiftResult& r);
json to_json(const DensityEstimate& d);
std::string density_csv(const DensityEstimate& d);  // t, sup_defect, complete
json to_json(double alpha, const RectContour& box, const ZeroCount& z);
json to_json(double alpha, const ZeroHunt& h);
json to_json(double alpha, double T, double delta, const IntegralBound& b);

// Object with the schema header and `body` merged in.
json with_schema(const std::string& schema, json body);

}  // namespace zlab
