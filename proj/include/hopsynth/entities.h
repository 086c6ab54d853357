#pragma once

#include <memory>
#include <string>
#include <vector>

namespace hopsynth {

// Named-entity recognizer plug-in. One entity list per input text.
class EntityRecognizer {
public:
    virtual ~EntityRecognizer() = default;
    virtual std::vector<std::vector<std::string>> recognize(const std::vector<std::string>& texts) const = 0;
};

// Rule-based recognizer: maximal runs of capitalized words (a sentence-initial
// capitalized word does not count by itself), plus runs of digit-bearing
// words. Results are deduplicated per text in order of appearance.
class HeuristicRecognizer : public EntityRecognizer {
public:
    std::vector<std::vector<std::string>> recognize(const std::vector<std::string>& texts) const override;
    std::vector<std::string> entities(const std::string& text) const;
};

// Client for POST /v1/entities {"texts": [...]} -> {"entities": [[...]]}.
std::unique_ptr<EntityRecognizer> make_http_recognizer(const std::string& endpoint, int timeout_seconds = 30);

}  // namespace hopsynth
