#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace crowdgrade::grading {

enum class Section { Overall, Technical, Personalization, Sentiment };

inline constexpr std::array<Section, 3> kAnalyticSections{Section::Overall, Section::Technical,
                                                           Section::Personalization};
inline constexpr std::array<Section, 4> kAllSections{Section::Overall, Section::Technical, Section::Personalization,
                                                     Section::Sentiment};

std::string_view to_string(Section section);
std::optional<Section> section_from_string(std::string_view name);

struct SectionWeights {
    double overall = 0.25;
    double technical = 0.25;
    double personalization = 0.25;
    double sentiment = 0.25;

    double operator[](Section s) const;
    double& operator[](Section s);
};

// Keyword thresholds and confidence weights used by both aggregation schemes.
struct ScoringThresholds {
    int min_keywords = 1;          // simple scheme: below this a comment is default
    int complex_min_keywords = 3;  // complex scheme: below this a comment is excluded
    int reliable_keywords = 4;
    double complex_negative_low_info_weight = 0.25;
    double complex_positive_low_info_weight = 0.75;
    int neg_low_info_keywords = 4;
    double pos_low_info = 2.0;  // info units
    SectionWeights section_weights;
    double grade_max = 4.3;

    // Throws InvalidArgument.
    void validate() const;
};

}  // namespace crowdgrade::grading
