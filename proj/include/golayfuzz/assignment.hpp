#pragma once

#include <string>
#include <string_view>

#include "golayfuzz/error.hpp"

namespace golayfuzz {

/// The two cluster labels. Label1 = inside the Hamming ball around the prototype.
enum class Label { kLabel1, kLabel2 };

constexpr std::string_view label_name(Label l) { return l == Label::kLabel1 ? "Label1" : "Label2"; }

inline Label parse_label(std::string_view text) {
  if (text == "Label1" || text == "label1" || text == "1") return Label::kLabel1;
  if (text == "Label2" || text == "label2" || text == "2") return Label::kLabel2;
  throw ValidationError("unknown label '" + std::string(text) + "' (expected Label1 or Label2)");
}

constexpr Label other_label(Label l) { return l == Label::kLabel1 ? Label::kLabel2 : Label::kLabel1; }

struct ClusterAssignment {
  std::string id;
  Label label = Label::kLabel2;
  int distance = 0;  // to the prototype

  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

}  // namespace golayfuzz
