#include <stdio.h>
#include <string.h>

#include "stabkit.h"

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,    \
                    #cond, stk_last_error());                           \
            return 1;                                                   \
        }                                                               \
    } while (0)

int main(void) {
    StkCode *code = NULL;
    CHECK(stk_code_builtin("five_qubit", &code) == STK_STATUS_OK);

    uintptr_t n = 0, m = 0, k = 0, d = 0;
    CHECK(stk_code_num_qubits(code, &n) == STK_STATUS_OK && n == 5);
    CHECK(stk_code_num_generators(code, &m) == STK_STATUS_OK && m == 4);
    CHECK(stk_code_num_logical(code, &k) == STK_STATUS_OK && k == 1);
    CHECK(stk_code_distance(code, 5, &d) == STK_STATUS_OK && d == 3);

    uint8_t syn[4];
    CHECK(stk_code_syndrome(code, "IIYII", syn, 4) == STK_STATUS_OK);

    StkTable *table = NULL;
    CHECK(stk_table_build(code, 1, &table) == STK_STATUS_OK);
    char *corr = NULL;
    CHECK(stk_table_decode(table, syn, 4, &corr) == STK_STATUS_OK);
    CHECK(strcmp(corr, "IIYII") == 0);
    stk_string_free(corr);
    stk_table_free(table);

    StkCode *bad = NULL;
    CHECK(stk_code_parse("n=1\nX\nZ\n", &bad) == STK_STATUS_INVALID);
    CHECK(bad == NULL && strlen(stk_last_error()) > 0);

    stk_code_free(code);
    puts("ok");
    return 0;
}
