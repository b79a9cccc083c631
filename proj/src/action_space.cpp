#include "unionhoi/action_space.hpp"

#include <stdexcept>

namespace unionhoi {

ActionSpace::ActionSpace(int subject_count, int object_count,
                         std::vector<UnionAction> actions)
    : subject_count_(subject_count),
      object_count_(object_count),
      actions_(std::move(actions)),
      excluded_(actions_.size(), false) {
  if (subject_count_ <= 0 || object_count_ < 0 || actions_.empty()) {
    throw std::invalid_argument("ActionSpace: empty vocabulary");
  }
  for (const auto& a : actions_) {
    if (a.subject < 0 || a.subject >= subject_count_) {
      throw std::invalid_argument("ActionSpace: subject index out of range");
    }
    if (a.object >= object_count_) {
      throw std::invalid_argument("ActionSpace: object index out of range");
    }
  }
}

const UnionAction& ActionSpace::action(int a) const {
  if (a < 0 || a >= union_action_count()) {
    throw std::out_of_range("ActionSpace: action index out of range");
  }
  return actions_[static_cast<size_t>(a)];
}

int ActionSpace::object_slot(int a) const {
  const UnionAction& ua = action(a);
  if (ua.object < 0) {
    throw std::invalid_argument("ActionSpace: action '" + ua.name +
                                "' has no target object");
  }
  return subject_count_ + ua.object;
}

void ActionSpace::set_excluded(const std::vector<int>& actions) {
  excluded_.assign(actions_.size(), false);
  for (int a : actions) {
    if (a < 0 || a >= union_action_count()) {
      throw std::out_of_range("ActionSpace: excluded action out of range");
    }
    excluded_[static_cast<size_t>(a)] = true;
  }
}

bool ActionSpace::is_excluded(int a) const {
  action(a);  // bounds check
  return excluded_[static_cast<size_t>(a)];
}

namespace {

// 26 verbs; four (run, smile, stand, walk) have no target object, and cut,
// eat, hit each act through both an instrument role and an object role.
// That yields 29 union actions over 26 subject slots and 25 object slots.
ActionSpace build_vcoco() {
  struct V {
    const char* name;
    int subject;
    bool has_object;
  };
  static const V kActions[] = {
      {"carry_obj", 0, true},        {"catch_obj", 1, true},
      {"cut_instr", 2, true},        {"cut_obj", 2, true},
      {"drink_instr", 3, true},      {"eat_instr", 4, true},
      {"eat_obj", 4, true},          {"hit_instr", 5, true},
      {"hit_obj", 5, true},          {"hold_obj", 6, true},
      {"jump_instr", 7, true},       {"kick_obj", 8, true},
      {"lay_instr", 9, true},        {"look_obj", 10, true},
      {"point_instr", 11, true},     {"read_obj", 12, true},
      {"ride_instr", 13, true},      {"run", 14, false},
      {"sit_instr", 15, true},       {"skateboard_instr", 16, true},
      {"ski_instr", 17, true},       {"smile", 18, false},
      {"snowboard_instr", 19, true}, {"stand", 20, false},
      {"surf_instr", 21, true},      {"talk_on_phone_instr", 22, true},
      {"throw_obj", 23, true},       {"walk", 24, false},
      {"work_on_computer_instr", 25, true},
  };
  std::vector<UnionAction> actions;
  int next_object = 0;
  for (const V& v : kActions) {
    actions.push_back({v.name, v.subject, v.has_object ? next_object : -1});
    if (v.has_object) ++next_object;
  }
  return ActionSpace(26, 25, std::move(actions));
}

// 117 verbs, every one with both a subject and an object role (234 instance
// slots in total).
ActionSpace build_hico() {
  std::vector<UnionAction> actions;
  actions.reserve(117);
  for (int i = 0; i < 117; ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "verb_%03d", i);
    actions.push_back({name, i, i});
  }
  return ActionSpace(117, 117, std::move(actions));
}

// Five actions, two of them without a target object. Keeps unit tests and
// micro-benches cheap.
ActionSpace build_mini() {
  std::vector<UnionAction> actions = {
      {"lift_obj", 0, 0}, {"push_obj", 1, 1}, {"pull_obj", 2, 2},
      {"wave", 3, -1},    {"rest", 4, -1},
  };
  return ActionSpace(5, 3, std::move(actions));
}

}  // namespace

ActionSpace ActionSpace::vcoco() { return build_vcoco(); }
ActionSpace ActionSpace::hico() { return build_hico(); }
ActionSpace ActionSpace::mini() { return build_mini(); }

ActionSpace ActionSpace::preset(const std::string& name) {
  if (name == "vcoco") return vcoco();
  if (name == "hico") return hico();
  if (name == "mini") return mini();
  throw std::invalid_argument("ActionSpace: unknown preset '" + name + "'");
}

}  // namespace unionhoi
