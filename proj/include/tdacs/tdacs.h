/*
 * Copyright 2026 the tdacs authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* tdacs public C API.
 *
 * The gateway is an opaque handle created from a config document and a
 * ledger directory.  All functions return a tdacs_status; every out-string
 * is heap-allocated and must be released with tdacs_string_free().
 * JSON crosses the boundary as UTF-8 strings.
 */

#ifndef TDACS_TDACS_H
#define TDACS_TDACS_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tdacs_status {
  TDACS_OK = 0,
  TDACS_ERR_INVALID_ARG = 1,
  TDACS_ERR_CONFIG = 2,
  TDACS_ERR_UNKNOWN_USER = 3,
  TDACS_ERR_AUTH_FAILED = 4,
  TDACS_ERR_UNKNOWN_RESOURCE = 5,
  TDACS_ERR_TOKEN_MALFORMED = 6,
  TDACS_ERR_TOKEN_TAMPERED = 7,
  TDACS_ERR_IP_NOT_WHITELISTED = 8,
  TDACS_ERR_DUPLICATE_RULE = 9,
  TDACS_ERR_UNKNOWN_RULE = 10,
  TDACS_ERR_OUT_OF_PERIOD = 11,
  TDACS_ERR_DUPLICATE_SEGMENT = 12,
  TDACS_ERR_NOT_ANCHORED = 13,
  TDACS_ERR_TAMPERED_HISTORY = 14,
  TDACS_ERR_NO_HISTORY = 15,
  TDACS_ERR_BACKEND_UNAVAILABLE = 16,
  TDACS_ERR_LENGTH_MISMATCH = 17,
  TDACS_ERR_STATE = 18,
  TDACS_ERR_IO = 19,
  TDACS_ERR_INTERNAL = 20
} tdacs_status;

typedef struct tdacs_gateway tdacs_gateway;

/* Lifecycle ---------------------------------------------------------- */

/* Opens a gateway from a JSON config file.  ledger_dir may be NULL for a
 * purely in-memory ledger; otherwise behavior records and the anchor chain
 * are persisted there. */
tdacs_status tdacs_gateway_open(const char* config_path,
                                const char* ledger_dir,
                                tdacs_gateway** out);
void tdacs_gateway_close(tdacs_gateway* gw);

/* Stable name for a status code ("ok", "auth_failed", ...). */
const char* tdacs_status_name(tdacs_status st);

/* Message for the most recent failing call on this handle.  The pointer is
 * valid until the next call on the same handle. */
const char* tdacs_last_error(const tdacs_gateway* gw);

void tdacs_string_free(char* s);

/* Token + access decisions ------------------------------------------- */

tdacs_status tdacs_issue_token(tdacs_gateway* gw,
                               const char* uname,
                               const char* password,
                               const char* ip,
                               char** token_out);

/* request_json: {"uname","oname","rname","op","ip","at"?,"token",
 * "payload_size"?}.  On success *decision_json_out is a document with
 * fields "verdict" and "reason". */
tdacs_status tdacs_access(tdacs_gateway* gw,
                          const char* request_json,
                          char** decision_json_out);

/* Trust-threshold stage only.  Result document:
 * {"verdict","ts","threshold","resource"}. */
tdacs_status tdacs_proxy_access(tdacs_gateway* gw,
                                const char* uname,
                                const char* rname,
                                char** result_json_out);

/* Harness ------------------------------------------------------------- */

/* Generates the scenario declared in the config's "scenario" section:
 * per-user weekly behavior segments, all anchored.  Summary JSON out. */
tdacs_status tdacs_scenario_run(tdacs_gateway* gw, char** summary_json_out);

/* Month-by-month trust table (all users), or per-segment detail for one
 * user when uname is non-NULL.  text_out is an aligned table, json_out the
 * machine-readable equivalent; either may be NULL if not wanted. */
tdacs_status tdacs_trust_report(tdacs_gateway* gw,
                                const char* uname,
                                char** text_out,
                                char** json_out);

/* Replays a JSONL trace through the token -> decision -> proxy pipeline.
 * *mismatches_out counts events whose decision differed from "expected". */
tdacs_status tdacs_replay(tdacs_gateway* gw,
                          const char* trace_path,
                          int* mismatches_out,
                          char** report_json_out);

/* Ledger -------------------------------------------------------------- */

/* Verifies the anchor chain and every anchored segment.  *ok_out is 1 only
 * if everything checks out; the JSON report lists per-segment results. */
tdacs_status tdacs_ledger_verify(tdacs_gateway* gw,
                                 int* ok_out,
                                 char** report_json_out);

tdacs_status tdacs_ledger_anchor(tdacs_gateway* gw,
                                 const char* segment_key,
                                 char** block_json_out);

/* HTTP ----------------------------------------------------------------- */

/* Serves POST /token, /access and /proxy/access.  Blocks until
 * tdacs_stop() is called from another thread. */
tdacs_status tdacs_serve(tdacs_gateway* gw, const char* host, int port);
tdacs_status tdacs_stop(tdacs_gateway* gw);

#ifdef __cplusplus
}
#endif

#endif /* TDACS_TDACS_H */
