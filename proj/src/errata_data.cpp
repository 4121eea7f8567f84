#include "cheshire/verify.hpp"

#include <json.hpp>

#include <stdexcept>

namespace cheshire {

// Embedded copy of data/errata.json; a unit test keeps the two in sync.
const std::string& errata_json_text() {
    static const std::string text = R"__errata__([
  {
    "id": "eq25",
    "published_claim": "first post-selection, orthogonal-direction polarization on arms (1,4) and (2,3): both weak values printed as +1/2",
    "engine_value": "sigma_zx^{14} = -1/2, sigma_zx^{23} = +1/2",
    "justification": "The antisymmetric polarization state enters the post-selection with opposite signs on the (1,4) and (2,3) path components, so any operator whose reduced action is proportional to |ij> (x) |B> forces these two weak values to differ in sign. Equal printed values are inconsistent with the post-selection's own sign structure. The magnitudes agree."
  },
  {
    "id": "eq26",
    "published_claim": "first post-selection, orthogonal-direction marginals: all four printed as +1/2",
    "engine_value": "sigma_zx^{1.} = -1/2, sigma_zx^{2.} = +1/2, sigma_zx^{.3} = +1/2, sigma_zx^{.4} = -1/2",
    "justification": "Marginals are exact sums of the single-arm values, so the sign split recorded for eq25 propagates: the left marginals are -1/2 and +1/2, the right marginals +1/2 and -1/2. The printed uniform +1/2 table contradicts additivity given eq24's zeros and eq25's magnitudes."
  },
  {
    "id": "eq41",
    "published_claim": "second post-selection: marginal values -1 printed under the parallel-direction (zz) label",
    "engine_value": "sigma_zx^{1.} = -1, sigma_zx^{.3} = +1 (the parallel-direction marginals are +1 here)",
    "justification": "The surrounding discussion concerns the orthogonal-direction operator and the numbers match it exactly; the parallel-direction marginals on these arms equal +1 and were already printed two displays earlier. Read as a label slip: zz printed where zx is meant."
  },
  {
    "id": "eq42",
    "published_claim": "second post-selection: marginal value 2 printed under the parallel-direction (zz) label",
    "engine_value": "sigma_zx^{2.} = 2",
    "justification": "The parallel-direction marginal on (2.) is 0; the value 2 belongs to the orthogonal-direction operator. This is the anomalous entry: it lies outside the operator's exact eigenvalue range [-1, 1]."
  },
  {
    "id": "eq43",
    "published_claim": "second post-selection: marginal value 0 printed under the parallel-direction (zz) label",
    "engine_value": "sigma_zx^{.4} = 0",
    "justification": "The value holds under both readings (the parallel-direction marginal on (.4) is also 0), but the display belongs to the orthogonal-direction list; recorded with its siblings as a label slip."
  },
  {
    "id": "eq44",
    "published_claim": "second post-selection: both marginal sums printed as 1 under the parallel-direction (zz) label",
    "engine_value": "sigma_zx^{1.} + sigma_zx^{2.} = 1 and sigma_zx^{.3} + sigma_zx^{.4} = 1",
    "justification": "The sums equal 1 for both operators, but the context is the orthogonal-direction compensation argument (-1 + 2 = 1); recorded with its siblings as a label slip."
  }
]
)__errata__";
    return text;
}

const std::vector<Erratum>& builtin_errata() {
    static const std::vector<Erratum> errata = [] {
        nlohmann::json parsed = nlohmann::json::parse(errata_json_text());
        if (!parsed.is_array()) throw std::logic_error("errata data: expected a JSON array");
        std::vector<Erratum> out;
        for (const auto& row : parsed) {
            out.push_back({row.at("id").get<std::string>(),
                           row.at("published_claim").get<std::string>(),
                           row.at("engine_value").get<std::string>(),
                           row.at("justification").get<std::string>()});
        }
        return out;
    }();
    return errata;
}

}  // namespace cheshire
