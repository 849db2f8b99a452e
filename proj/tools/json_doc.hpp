#pragma once

#include "superdiff/morphism.hpp"
#include "superdiff/sdiff.hpp"
#include "superdiff/sections.hpp"
#include "superdiff/selftest.hpp"

#include <json.hpp>

namespace superdiff::cli {

using Json = nlohmann::ordered_json;

Json to_json(Dims d);
Json to_json(Superfunction const &f);
Json to_json(SuperDerivation const &x);
Json to_json(SuperMorphism const &phi);
Json to_json(UnderlyingMorphism const &phi);
Json to_json(FactoredForm const &form);
Json to_json(SplitPoint const &s);
Json to_json(SelftestReport const &r);

} // namespace superdiff::cli
