#include "tvgcg/fields.hpp"

#include "tvgcg/error.hpp"

namespace tvgcg {

TriSet::TriSet(std::vector<int> idx) : indices(std::move(idx)) {
    for (std::size_t i = 0; i + 1 < indices.size(); ++i)
        if (indices[i] >= indices[i + 1])
            throw Error("TriSet: indices must be strictly increasing");
    if (!indices.empty() && indices.front() < 0)
        throw Error("TriSet: negative triangle index");
}

TriSet TriSet::from_mask(const std::vector<char>& mask) {
    TriSet s;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) s.indices.push_back(static_cast<int>(i));
    return s;
}

std::vector<char> TriSet::mask(int n_triangles) const {
    std::vector<char> m(n_triangles, 0);
    for (int i : indices) {
        if (i >= n_triangles) throw Error("TriSet: index out of range");
        m[i] = 1;
    }
    return m;
}

P0Field TriSet::indicator(const Mesh& mesh) const {
    P0Field u = P0Field::zeros(mesh);
    for (int i : indices) {
        if (i >= mesh.n_triangles()) throw Error("TriSet: index out of range");
        u[i] = 1.0;
    }
    return u;
}

}  // namespace tvgcg
