#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dietclust/pipeline/synth.hpp"

int main(int argc, char** argv) {
    CLI::App app{"write a deterministic synthetic country/diet dataset"};
    std::string out_dir = "fixture";
    dietclust::pipeline::FixtureSpec spec;
    app.add_option("-o,--out-dir", out_dir, "directory to write into")->capture_default_str();
    app.add_option("--seed", spec.seed, "generator seed")->capture_default_str();
    app.add_option("--blobs", spec.blob_count,
                   "planted blob count; 0 = realistic diet mode")
        ->capture_default_str();
    app.add_option("--countries", spec.countries, "row count; 0 = mode default");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto paths = dietclust::pipeline::write_fixture(out_dir, spec);
        std::cout << "wrote " << paths.fat.string() << "\n      " << paths.kg.string()
                  << "\n      " << paths.kcal.string() << "\n      " << paths.protein.string()
                  << "\n";
        if (!paths.kcal_reference.empty())
            std::cout << "      " << paths.kcal_reference.string() << "\n      "
                      << paths.top_deaths.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
