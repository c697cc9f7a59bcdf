/* cc -Icrates/ffi/include crates/ffi/examples/k23.c target/release/libnetcorr_ffi.a -lm -lpthread -ldl */
#include <stdio.h>
#include "netcorr.h"

int main(void) {
    NcGraph *g = NULL;
    NcDistance *d = NULL;
    NcWeight *w = NULL;
    NcVerdict *v = NULL;
    double eig[5];

    if (nc_graph_complete_bipartite(2, 3, &g) != NC_STATUS_OK ||
        nc_distance_shortest_paths(g, &d) != NC_STATUS_OK ||
        nc_weight_exp(d, 0.25, &w) != NC_STATUS_OK ||
        nc_certify_weight(w, 1e-9, &v) != NC_STATUS_OK ||
        nc_verdict_eigenvalues(v, eig, 5) != NC_STATUS_OK) {
        fprintf(stderr, "error: %s\n", nc_last_error_message());
        return 1;
    }
    printf("netcorr %s\n", nc_version());
    for (int i = 0; i < 5; i++)
        printf("eigenvalue[%d] = %.10f\n", i, eig[i]);
    printf("valid = %d\n", nc_verdict_is_valid(v));

    nc_verdict_free(v);
    nc_weight_free(w);
    nc_distance_free(d);
    nc_graph_free(g);
    return 0;
}
