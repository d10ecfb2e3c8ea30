#pragma once

#include <array>
#include <string_view>

namespace gonstab::golden {

inline constexpr int version = 1;

struct entry {
  std::string_view table;
  int n;
  int block;  // 0 when not block-specific
  int side;   // 0 value / left endpoint, 1 right endpoint
  double value;
  std::string_view provenance;
};

inline constexpr std::string_view sigma_src = "paper, coefficient tables (sigma_n row, 4 decimals)";
inline constexpr std::string_view dcheck_src = "paper, coefficient tables (d-check row, 4 decimals)";
inline constexpr std::string_view interval_src = "paper, instability-interval table (4 decimals)";

inline constexpr std::array<entry, 24> sigma = {{
    {"sigma", 4, 0, 0, 1.9142, sigma_src},   {"sigma", 5, 0, 0, 2.7528, sigma_src},
    {"sigma", 6, 0, 0, 3.6547, sigma_src},   {"sigma", 7, 0, 0, 4.6095, sigma_src},
    {"sigma", 8, 0, 0, 5.6097, sigma_src},   {"sigma", 9, 0, 0, 6.6497, sigma_src},
    {"sigma", 10, 0, 0, 7.7249, sigma_src},  {"sigma", 11, 0, 0, 8.8319, sigma_src},
    {"sigma", 12, 0, 0, 9.9679, sigma_src},  {"sigma", 13, 0, 0, 11.1304, sigma_src},
    {"sigma", 14, 0, 0, 12.3173, sigma_src}, {"sigma", 15, 0, 0, 13.5269, sigma_src},
    {"sigma", 16, 0, 0, 14.7578, sigma_src}, {"sigma", 17, 0, 0, 16.0085, sigma_src},
    {"sigma", 18, 0, 0, 17.2780, sigma_src}, {"sigma", 19, 0, 0, 18.5652, sigma_src},
    {"sigma", 20, 0, 0, 19.8690, sigma_src}, {"sigma", 21, 0, 0, 21.1889, sigma_src},
    {"sigma", 22, 0, 0, 22.5238, sigma_src}, {"sigma", 23, 0, 0, 23.8732, sigma_src},
    {"sigma", 24, 0, 0, 25.2365, sigma_src}, {"sigma", 25, 0, 0, 26.6130, sigma_src},
    {"sigma", 26, 0, 0, 28.0023, sigma_src}, {"sigma", 27, 0, 0, 29.4038, sigma_src},
}};

inline constexpr std::array<entry, 24> dcheck = {{
    {"dcheck", 4, 0, 0, 0.7072, dcheck_src},  {"dcheck", 5, 0, 0, 1.2140, dcheck_src},
    {"dcheck", 6, 0, 0, 1.7886, dcheck_src},  {"dcheck", 7, 0, 0, 2.4188, dcheck_src},
    {"dcheck", 8, 0, 0, 3.0960, dcheck_src},  {"dcheck", 9, 0, 0, 3.8140, dcheck_src},
    {"dcheck", 10, 0, 0, 4.5680, dcheck_src}, {"dcheck", 11, 0, 0, 5.3544, dcheck_src},
    {"dcheck", 12, 0, 0, 6.0, dcheck_src},    {"dcheck", 13, 0, 0, 6.5, dcheck_src},
    {"dcheck", 14, 0, 0, 7.0, dcheck_src},    {"dcheck", 15, 0, 0, 7.5, dcheck_src},
    {"dcheck", 16, 0, 0, 8.0, dcheck_src},    {"dcheck", 17, 0, 0, 8.5, dcheck_src},
    {"dcheck", 18, 0, 0, 9.0, dcheck_src},    {"dcheck", 19, 0, 0, 9.5, dcheck_src},
    {"dcheck", 20, 0, 0, 10.0, dcheck_src},   {"dcheck", 21, 0, 0, 10.5, dcheck_src},
    {"dcheck", 22, 0, 0, 11.0, dcheck_src},   {"dcheck", 23, 0, 0, 11.5, dcheck_src},
    {"dcheck", 24, 0, 0, 12.0, dcheck_src},   {"dcheck", 25, 0, 0, 12.5, dcheck_src},
    {"dcheck", 26, 0, 0, 13.0, dcheck_src},   {"dcheck", 27, 0, 0, 13.5, dcheck_src},
}};

// the table prints "[0, 1.7755)" for n = 4, block 2
inline constexpr std::array<entry, 30> instability = {{
    {"instability", 3, 1, 0, 0.0, interval_src},    {"instability", 3, 1, 1, 0.0722, interval_src},
    {"instability", 4, 1, 0, 0.0, interval_src},    {"instability", 4, 1, 1, 0.1768, interval_src},
    {"instability", 4, 2, 0, 0.0, interval_src},    {"instability", 4, 2, 1, 1.7755, interval_src},
    {"instability", 5, 1, 0, 0.0, interval_src},    {"instability", 5, 1, 1, 0.3035, interval_src},
    {"instability", 5, 2, 0, 0.2613, interval_src}, {"instability", 5, 2, 1, 3.3148, interval_src},
    {"instability", 6, 1, 0, 0.0, interval_src},    {"instability", 6, 1, 1, 0.4472, interval_src},
    {"instability", 6, 2, 0, 0.5858, interval_src}, {"instability", 6, 2, 1, 5.0850, interval_src},
    {"instability", 6, 3, 0, 1.0395, interval_src}, {"instability", 6, 3, 1, 6.3847, interval_src},
    {"instability", 7, 1, 0, 0.0, interval_src},    {"instability", 7, 1, 1, 0.6047, interval_src},
    {"instability", 7, 2, 0, 0.9586, interval_src}, {"instability", 7, 2, 1, 7.0430, interval_src},
    {"instability", 7, 3, 0, 1.8208, interval_src}, {"instability", 7, 3, 1, 9.9554, interval_src},
    {"instability", 8, 1, 0, 0.0, interval_src},    {"instability", 8, 1, 1, 0.7740, interval_src},
    {"instability", 8, 2, 0, 1.3720, interval_src}, {"instability", 8, 2, 1, 9.1598, interval_src},
    {"instability", 8, 3, 0, 2.8472, interval_src}, {"instability", 8, 3, 1, 13.9383, interval_src},
    {"instability", 8, 4, 0, 2.8969, interval_src}, {"instability", 8, 4, 1, 15.6593, interval_src},
}};

}  // namespace gonstab::golden
