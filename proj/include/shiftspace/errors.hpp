#pragma once

#include <stdexcept>
#include <string>

namespace shiftspace {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct out_of_range_error : error {
    using error::error;
};

struct disjointness_violation : error {
    using error::error;
};

struct not_infinite_error : error {
    using error::error;
};

struct unknown_vertex_error : error {
    using error::error;
};

struct has_sink_error : error {
    explicit has_sink_error(std::string vertex)
        : error("graph has a sink at vertex '" + vertex + "'"), vertex(std::move(vertex)) {}
    std::string vertex;
};

struct not_row_finite_error : error {
    using error::error;
};

struct block_too_long_error : error {
    using error::error;
};

struct not_a_member_error : error {
    using error::error;
};

struct window_not_in_domain_error : error {
    explicit window_not_in_domain_error(std::size_t position)
        : error("no block-map entry for the window at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

struct finite_input_unsupported_error : error {
    using error::error;
};

struct image_not_in_domain_error : error {
    using error::error;
};

struct graph_mismatch_error : error {
    using error::error;
};

struct unsupported_graph_error : error {
    using error::error;
};

struct window_mismatch_error : error {
    using error::error;
};

struct no_preimage_error : error {
    using error::error;
};

struct not_composable_error : error {
    using error::error;
};

struct well_definedness_violation : error {
    well_definedness_violation(std::string edge_a, std::string edge_b)
        : error("incoming edges '" + edge_a + "' and '" + edge_b +
                "' map to edges with different ranges"),
          edge_a(std::move(edge_a)), edge_b(std::move(edge_b)) {}
    std::string edge_a;
    std::string edge_b;
};

struct no_incoming_edge_error : error {
    using error::error;
};

struct parse_error : error {
    parse_error(std::size_t line, const std::string& what)
        : error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

}  // namespace shiftspace
