#ifndef UNIONHOI_ACTION_SPACE_HPP
#define UNIONHOI_ACTION_SPACE_HPP

#include <string>
#include <vector>

namespace unionhoi {

// One union-level interaction class and its instance-level slots.
struct UnionAction {
  std::string name;
  int subject = 0;  // subject-action index in [0, subject_count)
  int object = -1;  // object-action index in [0, object_count), -1 when the
                    // action has no target object
};

// Maps the union-level action vocabulary (length T) onto the instance-level
// one (length T_s + T_o): every union action reads one subject slot and, when
// it involves a target object, one object slot. Instance action vectors store
// the T_s subject slots first, then the T_o object slots.
class ActionSpace {
 public:
  ActionSpace(int subject_count, int object_count,
              std::vector<UnionAction> actions);

  static ActionSpace vcoco();  // T=29, T_s=26, T_o=25
  static ActionSpace hico();   // T=117, T_s+T_o=234
  static ActionSpace mini();   // small space for tests
  static ActionSpace preset(const std::string& name);

  int union_action_count() const { return static_cast<int>(actions_.size()); }
  int subject_action_count() const { return subject_count_; }
  int object_action_count() const { return object_count_; }
  int instance_action_count() const { return subject_count_ + object_count_; }

  const UnionAction& action(int a) const;
  bool has_object(int a) const { return action(a).object >= 0; }

  // Slot indices into the instance-level action vector.
  int subject_slot(int a) const { return action(a).subject; }
  int object_slot(int a) const;

  // Inference-time exclusion mask; excluded actions are skipped by triplet
  // enumeration. Empty by default.
  void set_excluded(const std::vector<int>& actions);
  bool is_excluded(int a) const;

 private:
  int subject_count_;
  int object_count_;
  std::vector<UnionAction> actions_;
  std::vector<bool> excluded_;
};

}  // namespace unionhoi

#endif  // UNIONHOI_ACTION_SPACE_HPP
