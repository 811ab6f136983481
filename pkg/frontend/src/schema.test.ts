import { describe, expect, it } from "vitest";
import { isPerspectives, isSamplePage } from "./schema";

const GOOD_PERSPECTIVES = {
  id: "2007-07/msg_001.txt",
  raw_source: "<html>...</html>",
  normalized_html: "<html>...</html>",
  mail_filter_tokens: ["buy", "pil", "l", "s"],
  recipient_tokens: ["buy", "pills"],
  token_diff: [
    ["equal", 0, 1, 0, 1],
    ["replace", 1, 4, 1, 2],
  ],
  spans: [
    {
      dom_path: "html/body/font[0]",
      raw_text: "#",
      reasons: ["FontSize"],
      boundary: "splits_visible_word",
      run_length_tokens: 1,
      run_length_chars: 1,
    },
  ],
  auto_labels: { has_concealment: true, subtypes: ["DisruptWord"], tricks: ["FontSize"] },
  human_labels: null,
};

describe("isPerspectives", () => {
  it("accepts a complete payload", () => {
    expect(isPerspectives(GOOD_PERSPECTIVES)).toBe(true);
  });

  it("accepts saved human labels", () => {
    const withHuman = {
      ...GOOD_PERSPECTIVES,
      human_labels: { has_concealment: false, subtypes: [], tricks: [], timestamp: 1 },
    };
    expect(isPerspectives(withHuman)).toBe(true);
  });

  it.each([
    "id",
    "raw_source",
    "normalized_html",
    "mail_filter_tokens",
    "recipient_tokens",
    "token_diff",
    "spans",
    "auto_labels",
  ])("rejects a payload missing %s — no partial render", (field) => {
    const partial: Record<string, unknown> = { ...GOOD_PERSPECTIVES };
    delete partial[field];
    expect(isPerspectives(partial)).toBe(false);
  });

  it("rejects malformed diff opcodes", () => {
    expect(
      isPerspectives({ ...GOOD_PERSPECTIVES, token_diff: [["equal", 0, 1]] }),
    ).toBe(false);
    expect(
      isPerspectives({ ...GOOD_PERSPECTIVES, token_diff: [[0, 0, 1, 0, 1]] }),
    ).toBe(false);
  });

  it("rejects non-object and wrongly typed payloads", () => {
    expect(isPerspectives(null)).toBe(false);
    expect(isPerspectives("html")).toBe(false);
    expect(isPerspectives({ ...GOOD_PERSPECTIVES, id: 7 })).toBe(false);
    expect(
      isPerspectives({ ...GOOD_PERSPECTIVES, mail_filter_tokens: [1, 2] }),
    ).toBe(false);
  });
});

describe("isSamplePage", () => {
  const good = {
    items: [{ id: "a", stratum: null, labeled: false, auto: null }],
    page: 1,
    pages: 3,
    total: 1120,
  };

  it("accepts a complete page", () => {
    expect(isSamplePage(good)).toBe(true);
    expect(isSamplePage({ ...good, items: [] })).toBe(true);
  });

  it("rejects pages with malformed items or missing counters", () => {
    expect(isSamplePage({ ...good, items: [{ labeled: false }] })).toBe(false);
    expect(isSamplePage({ items: good.items, page: 1, pages: 3 })).toBe(false);
    expect(isSamplePage(null)).toBe(false);
  });
});
