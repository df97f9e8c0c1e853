#include <stdio.h>
#include "transit.h"

int main(void) {
    const char *doc = "elements: a b c d\na b\nb c\nc d\na d\n";
    TransitSetSystem *s = NULL;
    if (transit_system_parse(doc, &s) != TRANSIT_STATUS_OK) {
        fprintf(stderr, "%s\n", transit_last_error());
        return 2;
    }
    bool holds = false;
    transit_system_check(s, "weakHierarchy", &holds);
    printf("weakHierarchy: %s\n", holds ? "holds" : "fails");
    char *order = NULL;
    transit_system_order(s, &order);
    printf("order: %s\n", order ? order : "none");
    transit_string_free(order);

    TransitFunctionHandle *r = NULL;
    TransitStatus st = transit_system_canonical(s, &r);
    printf("canonical: status %d, %s\n", st, st == TRANSIT_STATUS_OK ? "ok" : transit_last_error());
    transit_function_free(r);
    transit_system_free(s);
    return 0;
}
