#include <stdio.h>
#include <string.h>
#include "treegrp.h"

#define CHECK(call)                                                        \
    do {                                                                   \
        int32_t rc_ = (call);                                              \
        if (rc_ != TG_OK) {                                                \
            fprintf(stderr, "%s -> %d: %s\n", #call, rc_, tg_last_error());\
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    TgElement *a0 = NULL, *a2 = NULL, *c = NULL;
    char *hex = NULL, *img = NULL;
    uint8_t parity = 0;
    uint64_t num = 0, den = 0;

    CHECK(tg_generator(3, 0, &a0));
    CHECK(tg_generator(3, 2, &a2));
    CHECK(tg_commutator(a0, a2, &c));
    CHECK(tg_to_hex(c, &hex));
    CHECK(tg_apply(c, "000", &img));
    CHECK(tg_alpha(c, 4u, &parity));
    CHECK(tg_pj_dimension(3, 4u, &num, &den));
    printf("%s %s %u %llu/%llu\n", hex, img, (unsigned)parity,
           (unsigned long long)num, (unsigned long long)den);

    if (tg_generator(3, 7, &a0) != TG_INVALID_ARGUMENT || strlen(tg_last_error()) == 0) {
        return 2;
    }
    tg_string_free(hex);
    tg_string_free(img);
    tg_free(a0);
    tg_free(a2);
    tg_free(c);
    return 0;
}
