#ifndef UNIONHOI_IO_HPP
#define UNIONHOI_IO_HPP

#include <iosfwd>
#include <vector>

#include "unionhoi/action_space.hpp"
#include "unionhoi/fusion.hpp"
#include "unionhoi/synth.hpp"

// JSON-lines serialization for the three file kinds the pipeline exchanges:
//
//   scene file:     one record per scene
//     {"image":{"w":..,"h":..},"instances":[{"id":..,"box":[x0,y0,x1,y1],
//      "class":k,"actions":[slot,..]}],"rng":"...","seed":..,
//      "unions":[{"human_id":..,"object_id":..,"box":[..],"actions":[a,..],
//      "target_class":k}]}
//   detection file: one record per detection
//     {"scene":i,"kind":"instance","box":[..],"scores":{"class":[..],"action":[..]}}
//     {"scene":i,"kind":"union","box":[..],"scores":{"action":[..],"target_class":[..]}}
//   triplet file:   one record per scored triplet
//     {"scene":i,"human_id":..,"object_id":..|null,"action":..,"score":..,
//      "union_box":[..]|null,"mu":..}
//
// Instance detections are identified positionally: the n-th instance record
// of a scene gets id n. Strict reads reject unknown fields and invariant
// violations; lenient reads skip unknown fields.
namespace unionhoi::io {

void write_scenes(std::ostream& os, const std::vector<Scene>& scenes,
                  const ActionSpace& space);
std::vector<Scene> read_scenes(std::istream& is, const ActionSpace& space,
                               bool strict = true);

void write_detections(std::ostream& os,
                      const std::vector<DetectionSet>& per_scene);
std::vector<DetectionSet> read_detections(std::istream& is,
                                          bool strict = true);

void write_triplets(std::ostream& os,
                    const std::vector<std::vector<HOITriplet>>& per_scene);
std::vector<std::vector<HOITriplet>> read_triplets(std::istream& is,
                                                   bool strict = true);

}  // namespace unionhoi::io

#endif  // UNIONHOI_IO_HPP
