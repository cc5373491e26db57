#include <stdio.h>
#include "sbmcd.h"

int main(void) {
    SbmcdGraph *graph = NULL;
    if (sbmcd_graph_sample(60, 2, 0.5, 0.05, 7, &graph) != SBMCD_STATUS_OK) {
        fprintf(stderr, "sample: %s\n", sbmcd_last_error_message());
        return 1;
    }
    SbmcdRun *run = NULL;
    SbmcdStatus status = sbmcd_query_loop(graph, 0.5, 0.05, 6, SBMCD_STRATEGY_ACTIVE, 0, &run);
    if (status != SBMCD_STATUS_OK) {
        fprintf(stderr, "query loop: %s\n", sbmcd_last_error_message());
        sbmcd_graph_free(graph);
        return 1;
    }
    printf("%zu nodes, %zu edges, %zu queries, accuracy %.3f\n",
           sbmcd_graph_node_count(graph), sbmcd_graph_edge_count(graph),
           sbmcd_run_query_count(run), sbmcd_run_accuracy(run));
    sbmcd_run_free(run);
    sbmcd_graph_free(graph);
    return 0;
}
