// Generated by tools/gen_presets.py; do not edit.
#ifndef HILBERT_PRESETS_HPP
#define HILBERT_PRESETS_HPP

#include <array>
#include <string_view>
#include <utility>

namespace hilbert::presets {

inline constexpr std::string_view k_p2 = R"json({
  "name": "p2",
  "basis": [
    {
      "id": "1",
      "degree": 0
    },
    {
      "id": "h",
      "degree": 2
    },
    {
      "id": "h2",
      "degree": 4
    }
  ],
  "unit": "1",
  "products": [
    {
      "left": "h",
      "right": "h",
      "result": [
        {
          "basis": "h2",
          "coeff": "1"
        }
      ]
    }
  ],
  "integral": [
    {
      "basis": "h2",
      "coeff": "1"
    }
  ],
  "canonical_class": [
    {
      "basis": "h",
      "coeff": "-3"
    }
  ]
}
)json";

inline constexpr std::string_view k_p1xp1 = R"json({
  "name": "p1xp1",
  "basis": [
    {
      "id": "1",
      "degree": 0
    },
    {
      "id": "a",
      "degree": 2
    },
    {
      "id": "b",
      "degree": 2
    },
    {
      "id": "pt",
      "degree": 4
    }
  ],
  "unit": "1",
  "products": [
    {
      "left": "a",
      "right": "b",
      "result": [
        {
          "basis": "pt",
          "coeff": "1"
        }
      ]
    }
  ],
  "integral": [
    {
      "basis": "pt",
      "coeff": "1"
    }
  ],
  "canonical_class": [
    {
      "basis": "a",
      "coeff": "-2"
    },
    {
      "basis": "b",
      "coeff": "-2"
    }
  ]
}
)json";

inline constexpr std::string_view k_torus_like = R"json({
  "name": "torus_like",
  "basis": [
    {
      "id": "1",
      "degree": 0
    },
    {
      "id": "x1",
      "degree": 1
    },
    {
      "id": "x2",
      "degree": 1
    },
    {
      "id": "x3",
      "degree": 1
    },
    {
      "id": "x4",
      "degree": 1
    },
    {
      "id": "x12",
      "degree": 2
    },
    {
      "id": "x13",
      "degree": 2
    },
    {
      "id": "x14",
      "degree": 2
    },
    {
      "id": "x23",
      "degree": 2
    },
    {
      "id": "x24",
      "degree": 2
    },
    {
      "id": "x34",
      "degree": 2
    },
    {
      "id": "x123",
      "degree": 3
    },
    {
      "id": "x124",
      "degree": 3
    },
    {
      "id": "x134",
      "degree": 3
    },
    {
      "id": "x234",
      "degree": 3
    },
    {
      "id": "x1234",
      "degree": 4
    }
  ],
  "unit": "1",
  "products": [
    {
      "left": "x1",
      "right": "x2",
      "result": [
        {
          "basis": "x12",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x1",
      "right": "x3",
      "result": [
        {
          "basis": "x13",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x1",
      "right": "x4",
      "result": [
        {
          "basis": "x14",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x1",
      "right": "x23",
      "result": [
        {
          "basis": "x123",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x1",
      "right": "x24",
      "result": [
        {
          "basis": "x124",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x1",
      "right": "x34",
      "result": [
        {
          "basis": "x134",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x1",
      "right": "x234",
      "result": [
        {
          "basis": "x1234",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x2",
      "right": "x3",
      "result": [
        {
          "basis": "x23",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x2",
      "right": "x4",
      "result": [
        {
          "basis": "x24",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x2",
      "right": "x13",
      "result": [
        {
          "basis": "x123",
          "coeff": "-1"
        }
      ]
    },
    {
      "left": "x2",
      "right": "x14",
      "result": [
        {
          "basis": "x124",
          "coeff": "-1"
        }
      ]
    },
    {
      "left": "x2",
      "right": "x34",
      "result": [
        {
          "basis": "x234",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x2",
      "right": "x134",
      "result": [
        {
          "basis": "x1234",
          "coeff": "-1"
        }
      ]
    },
    {
      "left": "x3",
      "right": "x4",
      "result": [
        {
          "basis": "x34",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x3",
      "right": "x12",
      "result": [
        {
          "basis": "x123",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x3",
      "right": "x14",
      "result": [
        {
          "basis": "x134",
          "coeff": "-1"
        }
      ]
    },
    {
      "left": "x3",
      "right": "x24",
      "result": [
        {
          "basis": "x234",
          "coeff": "-1"
        }
      ]
    },
    {
      "left": "x3",
      "right": "x124",
      "result": [
        {
          "basis": "x1234",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x4",
      "right": "x12",
      "result": [
        {
          "basis": "x124",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x4",
      "right": "x13",
      "result": [
        {
          "basis": "x134",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x4",
      "right": "x23",
      "result": [
        {
          "basis": "x234",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x4",
      "right": "x123",
      "result": [
        {
          "basis": "x1234",
          "coeff": "-1"
        }
      ]
    },
    {
      "left": "x12",
      "right": "x34",
      "result": [
        {
          "basis": "x1234",
          "coeff": "1"
        }
      ]
    },
    {
      "left": "x13",
      "right": "x24",
      "result": [
        {
          "basis": "x1234",
          "coeff": "-1"
        }
      ]
    },
    {
      "left": "x14",
      "right": "x23",
      "result": [
        {
          "basis": "x1234",
          "coeff": "1"
        }
      ]
    }
  ],
  "integral": [
    {
      "basis": "x1234",
      "coeff": "1"
    }
  ],
  "canonical_class": []
}
)json";

inline constexpr std::string_view k_point = R"json({
  "name": "point",
  "basis": [
    {
      "id": "1",
      "degree": 0
    }
  ],
  "unit": "1",
  "products": [],
  "integral": [
    {
      "basis": "1",
      "coeff": "1"
    }
  ],
  "canonical_class": []
}
)json";

inline constexpr std::array kAll = {std::pair<std::string_view, std::string_view>{"p2", k_p2}, std::pair<std::string_view, std::string_view>{"p1xp1", k_p1xp1}, std::pair<std::string_view, std::string_view>{"torus_like", k_torus_like}, std::pair<std::string_view, std::string_view>{"point", k_point}};

}  // namespace hilbert::presets

#endif  // HILBERT_PRESETS_HPP
