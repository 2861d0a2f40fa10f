/* cc demo.c -Iinclude -Ltarget/release -l:libwhiteman_ffi.a -lm -lpthread -ldl (paths relative to the repo root) */
#include <stdio.h>
#include "whiteman.h"

int main(int argc, char **argv) {
    unsigned long p = 5, q = 7;
    if (argc == 3) {
        sscanf(argv[1], "%lu", &p);
        sscanf(argv[2], "%lu", &q);
    }

    WhtSequence *seq = NULL;
    WhtStatus st = wht_sequence_new(p, q, 0, true, &seq);
    if (st != WHT_STATUS_OK) {
        fprintf(stderr, "error[%s]\n", wht_status_message(st));
        return 2;
    }

    WhtAdicSummary s;
    wht_two_adic_complexity(seq, &s);
    printf("N=%llu phi2=%llu lower_bound=%llu maximal=%d\n",
           (unsigned long long)wht_sequence_period(seq),
           (unsigned long long)s.phi2,
           (unsigned long long)s.lower_bound,
           s.is_maximal);

    wht_sequence_free(seq);
    return 0;
}
