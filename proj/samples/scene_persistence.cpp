// Generates the two-triangle scene, tracks the shapes against the white
// ground and prints their value-bin persistence intervals.

#include <cstdio>

#include "tdt/scene.hpp"
#include "tdt/temporal.hpp"

int main() {
  const auto scene = tdt::scene::generate_scene(tdt::scene::fig4_spec());
  const auto masks = tdt::presence_masks(scene.video, 255);
  const auto tracks = tdt::track(scene.video, masks, tdt::Connectivity::eight);
  std::printf("%zu tracks over %zu frames\n", tracks.size(), scene.video.size());
  for (const auto& iv : tdt::persistence_diagram(scene.video, tracks, tdt::default_bins())) {
    std::printf("track %d  %-5s frames [%zu, %zu]  %.2fs .. %.2fs\n", iv.track, iv.bin.c_str(), iv.birth,
                iv.death, iv.birth_s, iv.death_s);
  }
}
