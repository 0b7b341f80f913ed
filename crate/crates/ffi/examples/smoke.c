#include <stdio.h>
#include "nc_hopf.h"

int main(void) {
    NcHopfPartition *p = NULL;
    char *s = NULL;
    int64_t mu = 0;
    if (nc_hopf_partition_parse("{1,4}{2,3}", &p) != NC_HOPF_STATUS_OK) {
        fprintf(stderr, "%s\n", nc_hopf_last_error());
        return 1;
    }
    nc_hopf_hierarchy_tree(p, &s);
    printf("tree %s\n", s);
    nc_hopf_string_free(s);
    nc_hopf_coproduct_nc("{1,2}{3}", NC_HOPF_VARIANT_LEFT_PLUS, &s);
    printf("left %s\n", s);
    nc_hopf_string_free(s);
    NcHopfPartition *top = NULL;
    nc_hopf_partition_parse("{1,2,3,4}", &top);
    nc_hopf_moebius(NC_HOPF_LATTICE_NON_CROSSING, p, top, &mu);
    printf("moebius %lld\n", (long long)mu);
    if (nc_hopf_partition_parse("{1,2}{2}", &top) != NC_HOPF_STATUS_OK)
        printf("error %s\n", nc_hopf_last_error());
    nc_hopf_partition_free(p);
    nc_hopf_partition_free(top);
    return 0;
}
