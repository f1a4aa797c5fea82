/* SPDX-License-Identifier: Apache-2.0 */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "agm.h"

#define CHECK(cond)                                                    \
    do {                                                               \
        if (!(cond)) {                                                 \
            const char *e = agm_last_error();                          \
            fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,     \
                    e ? e : "no error message");                       \
            return 1;                                                  \
        }                                                              \
    } while (0)

int main(void) {
    uint32_t src[] = {0, 1, 3};
    uint32_t dst[] = {1, 2, 4};
    double w[] = {1.0, 2.0, 5.0};
    AgmGraph *g = NULL;
    CHECK(agm_graph_from_edges(5, src, dst, w, 3, false, &g) == AGM_STATUS_OK);
    CHECK(agm_graph_vertex_count(g) == 5);

    AgmRunOptions opts = agm_run_options_default();
    opts.ranks = 2;
    opts.policy = AGM_POLICY_CYCLIC;

    AgmResult *r = NULL;
    CHECK(agm_run_sssp(g, 0, AGM_SSSP_ORDERING_DELTA, 2, &opts, &r) == AGM_STATUS_OK);
    size_t n = agm_result_len(r);
    CHECK(n == 5);
    double d[5];
    CHECK(agm_result_values(r, d, n) == AGM_STATUS_OK);
    CHECK(d[0] == 0.0 && d[1] == 1.0 && d[2] == 3.0 && isinf(d[3]) && isinf(d[4]));
    AgmStats s;
    CHECK(agm_result_stats(r, &s) == AGM_STATUS_OK);
    CHECK(s.updates_applied + s.updates_rejected == s.items_processed);
    agm_result_free(r);

    r = NULL;
    CHECK(agm_run_cc(g, NULL, &r) == AGM_STATUS_OK);
    CHECK(agm_result_values(r, d, 5) == AGM_STATUS_OK);
    CHECK(d[0] == 0 && d[1] == 0 && d[2] == 0 && d[3] == 3 && d[4] == 3);
    agm_result_free(r);

    r = NULL;
    CHECK(agm_run_bfs(g, 9, AGM_BFS_ORDERING_LEVEL, 0, NULL, &r) == AGM_STATUS_INVALID_ARGUMENT);
    CHECK(r == NULL && agm_last_error() != NULL);
    agm_graph_free(g);

    CHECK(agm_graph_load("/nonexistent/graph.txt", AGM_FORMAT_EDGE_LIST, false, false, &g) == AGM_STATUS_IO_ERROR);
    puts("c smoke ok");
    return 0;
}
