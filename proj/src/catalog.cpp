#include "rswan/error.hpp"
#include "rswan/run.hpp"

namespace rswan {

namespace {

const char* const kCatalog2 = R"json({
  "version": 1,
  "towers": {
    "K": {"p": 2, "s": 1, "variables": ["t"]},
    "K2": {"p": 2, "s": 2, "variables": ["t"]},
    "K3": {"p": 2, "s": 3, "variables": ["t"]},
    "KU": {"p": 2, "s": 1, "variables": ["u", "t"]},
    "L": {"p": 2, "s": 1, "variables": ["u"]},
    "LVW": {"p": 2, "s": 1, "variables": ["v", "w"]},
    "X": {"p": 2, "s": 1, "variables": ["x", "t"]}
  },
  "characters": {
    "t-3": {"tower": "K", "components": ["t^-3"]},
    "t-1": {"tower": "K", "components": ["t^-1"]},
    "t-2": {"tower": "K", "components": ["t^-2"]},
    "t-5+t-2": {"tower": "K", "components": ["t^-5 + t^-2"]},
    "gt-7": {"tower": "K", "components": ["t^-7 + t^-4 + t^-1"]},
    "w2-a": {"tower": "K2", "components": ["t^-1", "t^-3"]},
    "w2-b": {"tower": "K2", "components": ["t^-3", "t^-1"]},
    "w2-c": {"tower": "K2", "components": ["0", "t^-5"]},
    "w2-d": {"tower": "K2", "components": ["t^-2 + t^-1", "t^-4"]},
    "w3-a": {"tower": "K3", "components": ["t^-1", "0", "t^-3"]},
    "ut-2": {"tower": "KU", "components": ["u*t^-2"]},
    "t-3u": {"tower": "KU", "components": ["t^-3"]},
    "ut-3": {"tower": "KU", "components": ["u*t^-3"]},
    "ut-4": {"tower": "KU", "components": ["u*t^-4 + u^-1*t^-1"]}
  },
  "extensions": {
    "wild": {"source": "K", "target": "L", "images": {"t": "u^2 + u^3"}},
    "tame": {"source": "K", "target": "L", "images": {"t": "u^3"}},
    "wild-v": {"source": "K", "target": "LVW", "images": {"t": "w^2 + v*w^3"}},
    "wild-4": {"source": "K", "target": "L", "images": {"t": "u^4 + u^5"}}
  },
  "tasks": [
    {"id": "exp-2", "task": "exp-congruences", "p": 2},
    {"id": "swan-t-3", "task": "swan", "character": "t-3", "expect": {"sw": 3}},
    {"id": "swan-t-2", "task": "swan", "character": "t-2", "expect": {"sw": 1}},
    {"id": "swan-t-5+t-2", "task": "swan", "character": "t-5+t-2", "expect": {"sw": 5}},
    {"id": "swan-w2-a", "task": "swan", "character": "w2-a", "expect": {"sw": 3}},
    {"id": "swan-w2-b", "task": "swan", "character": "w2-b", "expect": {"sw": 6}},
    {"id": "swan-w2-c", "task": "swan", "character": "w2-c", "expect": {"sw": 5}},
    {"id": "swan-w3-a", "task": "swan", "character": "w3-a", "expect": {"sw": 4}},
    {"id": "swan-ut-2", "task": "swan", "character": "ut-2", "expect": {"sw": 2}},
    {"id": "rsw-t-3", "task": "rsw", "character": "t-3"},
    {"id": "rsw-t-5+t-2", "task": "rsw", "character": "t-5+t-2"},
    {"id": "rsw-gt-7", "task": "rsw", "character": "gt-7"},
    {"id": "rsw-w2-a", "task": "rsw", "character": "w2-a", "expect": {"form": "t^-3 dlog(t) + t^-2 dlog(t) | window(3,1)"}},
    {"id": "rsw-w2-b", "task": "rsw", "character": "w2-b"},
    {"id": "rsw-w2-c", "task": "rsw", "character": "w2-c"},
    {"id": "rsw-w2-d", "task": "rsw", "character": "w2-d"},
    {"id": "rsw-w3-a", "task": "rsw", "character": "w3-a"},
    {"id": "rsw-ut-2", "task": "rsw", "character": "ut-2", "expect": {"form": "u*t^-2 dlog(u) | window(2,1)"}},
    {"id": "rsw-t-3u", "task": "rsw", "character": "t-3u"},
    {"id": "rsw-ut-3", "task": "rsw", "character": "ut-3"},
    {"id": "rsw-ut-4", "task": "rsw", "character": "ut-4"},
    {"id": "duality-2-1", "task": "duality", "tower": "KU", "n": 2, "m": 1},
    {"id": "duality-3-1", "task": "duality", "tower": "KU", "n": 3, "m": 1},
    {"id": "duality-4-2", "task": "duality", "tower": "KU", "n": 4, "m": 2},
    {"id": "rec-t-3", "task": "reciprocity", "character": "t-3"},
    {"id": "rec-t-5+t-2", "task": "reciprocity", "character": "t-5+t-2"},
    {"id": "rec-w2-a", "task": "reciprocity", "character": "w2-a"},
    {"id": "rec-w2-c", "task": "reciprocity", "character": "w2-c"},
    {"id": "rec-ut-2", "task": "reciprocity", "character": "ut-2"},
    {"id": "rec-ut-3", "task": "reciprocity", "character": "ut-3"},
    {"id": "cc-wild-t-3", "task": "conductor-change", "character": "t-3", "extension": "wild",
     "expect": {"e": 2, "delta_tor": 1, "predicted_sw_L": 5, "direct_sw_L": 5}},
    {"id": "cc-wild-t-1", "task": "conductor-change", "character": "t-1", "extension": "wild"},
    {"id": "cc-tame-t-2", "task": "conductor-change", "character": "t-2", "extension": "tame",
     "expect": {"sw_K": 1, "predicted_sw_L": 3, "direct_sw_L": 3}},
    {"id": "cc-wild-v-t-3", "task": "conductor-change", "character": "t-3", "extension": "wild-v"},
    {"id": "cc-wild-4-t-5", "task": "conductor-change", "character": "t-5+t-2", "extension": "wild-4"},
    {"id": "thmB-ut-2", "task": "thmB", "character": "ut-2", "taus": [3, 5, 7],
     "expect": {"max_ratio": "13/7"}},
    {"id": "thmB-t-3", "task": "thmB", "character": "t-3u", "taus": [1, 3]},
    {"id": "thmC-xt-3", "task": "thmC", "tower": "X", "f": "x*t^-3", "x0": 0, "e": [2, 4, 8]},
    {"id": "thmC-t-3", "task": "thmC", "tower": "X", "f": "t^-3", "x0": 0, "e": [2, 4]}
  ]
})json";

const char* const kCatalog3 = R"json({
  "version": 1,
  "towers": {
    "K": {"p": 3, "s": 1, "variables": ["t"]},
    "K2": {"p": 3, "s": 2, "variables": ["t"]},
    "KU": {"p": 3, "s": 1, "variables": ["u", "t"]},
    "L": {"p": 3, "s": 1, "variables": ["u"]},
    "X": {"p": 3, "s": 1, "variables": ["x", "t"]}
  },
  "characters": {
    "t-2": {"tower": "K", "components": ["t^-2"]},
    "t-1": {"tower": "K", "components": ["t^-1"]},
    "t-4+t-1": {"tower": "K", "components": ["t^-4 + 2*t^-1"]},
    "t-3": {"tower": "K", "components": ["t^-3"]},
    "w2-a": {"tower": "K2", "components": ["t^-1", "t^-2"]},
    "w2-b": {"tower": "K2", "components": ["0", "t^-4"]},
    "ut-3": {"tower": "KU", "components": ["u*t^-3"]},
    "ut-2": {"tower": "KU", "components": ["t^-2"]}
  },
  "extensions": {
    "wild": {"source": "K", "target": "L", "images": {"t": "u^3 + u^4"}}
  },
  "tasks": [
    {"id": "exp-3", "task": "exp-congruences", "p": 3},
    {"id": "swan-t-2", "task": "swan", "character": "t-2", "expect": {"sw": 2}},
    {"id": "swan-t-3", "task": "swan", "character": "t-3", "expect": {"sw": 1}},
    {"id": "swan-w2-a", "task": "swan", "character": "w2-a", "expect": {"sw": 3}},
    {"id": "swan-ut-3", "task": "swan", "character": "ut-3", "expect": {"sw": 3}},
    {"id": "rsw-t-2", "task": "rsw", "character": "t-2", "expect": {"form": "2*t^-2 dlog(t) | window(2,0)"}},
    {"id": "rsw-t-4+t-1", "task": "rsw", "character": "t-4+t-1"},
    {"id": "rsw-w2-a", "task": "rsw", "character": "w2-a"},
    {"id": "rsw-w2-b", "task": "rsw", "character": "w2-b"},
    {"id": "rsw-ut-3", "task": "rsw", "character": "ut-3"},
    {"id": "rsw-ut-2", "task": "rsw", "character": "ut-2"},
    {"id": "duality-2-0", "task": "duality", "tower": "KU", "n": 2, "m": 0},
    {"id": "duality-4-1", "task": "duality", "tower": "KU", "n": 4, "m": 1},
    {"id": "rec-t-2", "task": "reciprocity", "character": "t-2"},
    {"id": "rec-t-4+t-1", "task": "reciprocity", "character": "t-4+t-1"},
    {"id": "rec-w2-a", "task": "reciprocity", "character": "w2-a"},
    {"id": "rec-w2-b", "task": "reciprocity", "character": "w2-b"},
    {"id": "cc-wild-t-1", "task": "conductor-change", "character": "t-1", "extension": "wild",
     "expect": {"e": 3, "delta_tor": 1, "predicted_sw_L": 2, "direct_sw_L": 2}},
    {"id": "cc-wild-t-2", "task": "conductor-change", "character": "t-2", "extension": "wild"},
    {"id": "thmB-ut-3", "task": "thmB", "character": "ut-3", "taus": [2, 4, 5]},
    {"id": "thmC-xt-3", "task": "thmC", "tower": "X", "f": "x*t^-3", "x0": 0, "e": [3, 6, 9]}
  ]
})json";

const char* const kCatalog5 = R"json({
  "version": 1,
  "towers": {
    "K": {"p": 5, "s": 1, "variables": ["t"]},
    "K2": {"p": 5, "s": 2, "variables": ["t"]},
    "KU": {"p": 5, "s": 1, "variables": ["u", "t"]},
    "L": {"p": 5, "s": 1, "variables": ["u"]}
  },
  "characters": {
    "t-2": {"tower": "K", "components": ["t^-2"]},
    "t-7+t-5": {"tower": "K", "components": ["t^-7 + t^-5"]},
    "t-5": {"tower": "K", "components": ["t^-5"]},
    "w2-a": {"tower": "K2", "components": ["t^-1", "t^-3"]},
    "ut-5": {"tower": "KU", "components": ["u*t^-5"]}
  },
  "extensions": {
    "wild": {"source": "K", "target": "L", "images": {"t": "u^5 + u^6"}}
  },
  "tasks": [
    {"id": "exp-5", "task": "exp-congruences", "p": 5},
    {"id": "swan-t-7+t-5", "task": "swan", "character": "t-7+t-5", "expect": {"sw": 7}},
    {"id": "swan-t-5", "task": "swan", "character": "t-5", "expect": {"sw": 1}},
    {"id": "swan-w2-a", "task": "swan", "character": "w2-a", "expect": {"sw": 5}},
    {"id": "swan-ut-5", "task": "swan", "character": "ut-5", "expect": {"sw": 5}},
    {"id": "rsw-t-2", "task": "rsw", "character": "t-2"},
    {"id": "rsw-t-7+t-5", "task": "rsw", "character": "t-7+t-5"},
    {"id": "rsw-w2-a", "task": "rsw", "character": "w2-a"},
    {"id": "rsw-ut-5", "task": "rsw", "character": "ut-5"},
    {"id": "rec-t-2", "task": "reciprocity", "character": "t-2"},
    {"id": "rec-t-7+t-5", "task": "reciprocity", "character": "t-7+t-5"},
    {"id": "cc-wild-t-2", "task": "conductor-change", "character": "t-2", "extension": "wild",
     "expect": {"e": 5, "delta_tor": 1, "predicted_sw_L": 9, "direct_sw_L": 9}}
  ]
})json";

}  // namespace

Json catalog_config(int p) {
  switch (p) {
    case 2:
      return Json::parse(kCatalog2);
    case 3:
      return Json::parse(kCatalog3);
    case 5:
      return Json::parse(kCatalog5);
    default:
      throw ConfigError("no catalog for p = " + std::to_string(p));
  }
}

}  // namespace rswan
