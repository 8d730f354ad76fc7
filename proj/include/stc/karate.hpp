#pragma once

#include "stc/community.hpp"
#include "stc/graph.hpp"

namespace stc {

/// Zachary's karate club: 34 members, 78 friendship edges, and the
/// two-faction split after the club broke up. Ships embedded so the
/// CLI and tests run a real instance without touching the network.
inline const char* karate_edge_list_text() {
  return "# Zachary karate club, 34 vertices, 78 edges\n"
         "0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n0 7\n0 8\n0 10\n0 11\n0 12\n0 13\n"
         "0 17\n0 19\n0 21\n0 31\n"
         "1 2\n1 3\n1 7\n1 13\n1 17\n1 19\n1 21\n1 30\n"
         "2 3\n2 7\n2 8\n2 9\n2 13\n2 27\n2 28\n2 32\n"
         "3 7\n3 12\n3 13\n"
         "4 6\n4 10\n"
         "5 6\n5 10\n5 16\n"
         "6 16\n"
         "8 30\n8 32\n8 33\n"
         "9 33\n"
         "13 33\n"
         "14 32\n14 33\n"
         "15 32\n15 33\n"
         "18 32\n18 33\n"
         "19 33\n"
         "20 32\n20 33\n"
         "22 32\n22 33\n"
         "23 25\n23 27\n23 29\n23 32\n23 33\n"
         "24 25\n24 27\n24 31\n"
         "25 31\n"
         "26 29\n26 33\n"
         "27 33\n"
         "28 31\n28 33\n"
         "29 32\n29 33\n"
         "30 32\n30 33\n"
         "31 32\n31 33\n"
         "32 33\n";
}

/// The two factions (instructor's side and administrator's side).
inline const char* karate_communities_text() {
  return "0 1 2 3 4 5 6 7 8 10 11 12 13 16 17 19 21\n"
         "9 14 15 18 20 22 23 24 25 26 27 28 29 30 31 32 33\n";
}

inline Graph karate_graph() { return load_graph(karate_edge_list_text()); }

inline CommunitySet karate_factions(const Graph& g) {
  return load_communities(karate_communities_text(), g, /*restrict_to_lcc=*/false);
}

}  // namespace stc
