/* Minimal consumer of the hodgeknot C ABI: look up a built-in matrix,
 * run the cross-checked pipeline, and print a few invariants. */
#include <hodgeknot.h>

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static char *get_alexander(const HkReport *report) {
  size_t needed = 0;
  if (hk_report_alexander(report, NULL, 0, &needed) != HK_STATUS_BUFFER_TOO_SMALL)
    return NULL;
  char *buf = malloc(needed);
  if (buf == NULL) return NULL;
  if (hk_report_alexander(report, buf, needed, &needed) != HK_STATUS_OK) {
    free(buf);
    return NULL;
  }
  return buf;
}

int main(void) {
  printf("library version %s\n", hk_version());

  HkSeifert *seifert = NULL;
  if (hk_seifert_by_name("torus(2,5)", &seifert) != HK_STATUS_OK) {
    fprintf(stderr, "lookup failed: %s\n", hk_last_error_message());
    return 1;
  }

  size_t size = 0;
  hk_seifert_size(seifert, &size);
  printf("matrix size %zu\n", size);

  HkReport *report = NULL;
  if (hk_report_compute(seifert, /*crosscheck=*/1, &report) != HK_STATUS_OK) {
    fprintf(stderr, "pipeline failed: %s\n", hk_last_error_message());
    hk_seifert_free(seifert);
    return 1;
  }

  char *alexander = get_alexander(report);
  if (alexander == NULL) {
    fprintf(stderr, "string round-trip failed\n");
    return 1;
  }
  printf("alexander %s\n", alexander);
  free(alexander);

  size_t nakanishi = 0;
  hk_report_nakanishi_index(report, &nakanishi);
  printf("nakanishi %zu\n", nakanishi);

  int64_t signature = 0;
  size_t nullity = 0;
  if (hk_signature(seifert, 1, 2, &signature, &nullity) != HK_STATUS_OK) {
    fprintf(stderr, "signature failed: %s\n", hk_last_error_message());
    return 1;
  }
  printf("signature at half turn %lld (nullity %zu)\n", (long long)signature,
         nullity);

  /* Error paths must not crash and must leave a message. */
  HkSeifert *missing = NULL;
  if (hk_seifert_by_name("no-such-knot", &missing) != HK_STATUS_INVALID_ARGUMENT) {
    fprintf(stderr, "unexpected lookup success\n");
    return 1;
  }
  if (strlen(hk_last_error_message()) == 0) {
    fprintf(stderr, "missing error message\n");
    return 1;
  }

  hk_report_free(report);
  hk_seifert_free(seifert);
  printf("ok\n");
  return 0;
}
