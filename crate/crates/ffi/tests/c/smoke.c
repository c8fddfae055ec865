#include <stdio.h>
#include <string.h>

#include "qpath.h"

static const char SRC[] =
    "dim 2\n"
    "gate H = [[1/sqrt2, 1/sqrt2], [1/sqrt2, -1/sqrt2]]\n"
    "gate X = [[0, 1], [1, 0]]\n"
    "circuit mz = H X H\n";

int main(void) {
    QpDocument *doc = NULL;
    if (qp_document_parse((const uint8_t *)SRC, strlen(SRC), &doc) != QP_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", qp_last_error());
        return 1;
    }
    const char *argv[] = {"verify", "--circuit", "mz"};
    char *text = NULL;
    QpStatus status = qp_run(doc, argv, 3, &text);
    if (status != QP_STATUS_OK || strstr(text, "PASS") == NULL) {
        fprintf(stderr, "verify failed: %d\n", (int)status);
        return 1;
    }
    fputs(text, stdout);
    qp_string_free(text);
    qp_document_free(doc);

    QpDocument *bad = NULL;
    if (qp_document_parse((const uint8_t *)"dim 0", 5, &bad) != QP_STATUS_PARSE_ERROR || bad != NULL) {
        return 1;
    }
    printf("%s\n", qp_last_error());
    return 0;
}
