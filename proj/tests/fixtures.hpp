#pragma once

#include <pcgl/io.hpp>

#include <string>

inline pcgl::PoissonPresentation fixture(const std::string& name) {
    return pcgl::load_presentation(std::string(PCGL_FIXTURE_DIR) + "/" + name + ".json");
}

inline std::string fixture_path(const std::string& name) { return std::string(PCGL_FIXTURE_DIR) + "/" + name + ".json"; }

inline pcgl::Ideal ideal_of(const pcgl::PoissonPresentation& p, std::initializer_list<const char*> gens) {
    std::vector<pcgl::Polynomial> g;
    for (auto s : gens) g.push_back(p.parse(s));
    return pcgl::Ideal(p.ring(), g, p.groebner_options());
}
