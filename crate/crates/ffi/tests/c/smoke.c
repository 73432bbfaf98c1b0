#include <stdio.h>
#include <string.h>
#include "cbgrass.h"

static const char *DISTINCT =
    "{\"field\":{\"gf\":3},\"n\":3,\"k\":2,\"planes\":["
    "{\"n\":3,\"basis\":[[\"1\",\"0\",\"0\",\"0\"],[\"0\",\"1\",\"0\",\"0\"]]},"
    "{\"n\":3,\"basis\":[[\"0\",\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\",\"1\"]]}]}";

int main(void) {
    CbgConfiguration *c = NULL;
    if (cbg_configuration_from_json(DISTINCT, &c) != CBG_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", cbg_last_error_message());
        return 1;
    }
    CbgCertificate *cert = NULL;
    if (cbg_check_sp(c, CBG_TESTER_BRUTE_FORCE, 0, 64, 10000000, &cert) != CBG_STATUS_OK) {
        fprintf(stderr, "check: %s\n", cbg_last_error_message());
        return 1;
    }
    bool holds = true, exact = false;
    cbg_certificate_verdict(cert, &holds, &exact);
    char *json = NULL;
    cbg_certificate_to_json(cert, &json);
    bool valid = false;
    CbgStatus s = cbg_verify_json(json, 10000000, &valid);
    printf("holds=%d exact=%d valid=%d\n", holds, exact, valid);
    cbg_string_free(json);
    cbg_certificate_free(cert);
    cbg_configuration_free(c);
    if (cbg_configuration_from_json("[1]", &c) != CBG_STATUS_INVALID_INPUT) return 1;
    return (s == CBG_STATUS_OK && !holds && exact && valid) ? 0 : 1;
}
