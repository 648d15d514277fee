// Writes the bundled test data: a 512x512 in-air frame and a small underwater
// corpus of greenish, bluish and hazy looks over procedural scenes.
#include <cstdio>
#include <filesystem>
#include <string>

#include "uwr/image_io.hpp"
#include "uwr/synth.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <data-dir>\n", argv[0]);
        return 2;
    }
    const std::filesystem::path root = argv[1];
    std::filesystem::create_directories(root / "corpus");

    uwr::save_image(root / "test_frame.png", uwr::synthetic_scene(512, 512, 2024));

    int made = 0;
    std::uint64_t seed = 100;
    for (const char* look : {"greenish", "bluish", "hazy"}) {
        for (int i = 0; i < 4; ++i, ++seed) {
            const uwr::ImageBuf scene = uwr::synthetic_scene(384, 288, seed);
            const uwr::ImageBuf frame = uwr::apply_water(scene, uwr::water_preset(look, seed));
            char name[64];
            std::snprintf(name, sizeof name, "%s_%02d.png", look, i);
            uwr::save_image(root / "corpus" / name, frame);
            ++made;
        }
    }
    std::printf("wrote %d corpus frames and test_frame.png under %s\n", made, root.string().c_str());
    return 0;
}
