#pragma once

#include <string_view>

#include "kbin/instance.hpp"

namespace kbin {

/// First-fit over D_k (k whole-sequence repetitions of the instance order).
KPacking ffk(const Instance& instance, int k);
KPacking ffk(const IntegerInstance& instance, int k);

/// First-fit decreasing: sort by non-increasing size (ties by id), then ffk.
KPacking ffdk(const Instance& instance, int k);
KPacking ffdk(const IntegerInstance& instance, int k);

/// Next-fit over D_k with a single open bin.
KPacking nfk(const Instance& instance, int k);
KPacking nfk(const IntegerInstance& instance, int k);

enum class Heuristic { FFk, FFDk, NFk };

Heuristic parse_heuristic(std::string_view name);
std::string_view to_string(Heuristic h);

KPacking run_heuristic(Heuristic h, const Instance& instance, int k);
KPacking run_heuristic(Heuristic h, const IntegerInstance& instance, int k);

}  // namespace kbin
