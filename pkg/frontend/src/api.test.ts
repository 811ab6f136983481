import { describe, expect, it } from "vitest";
import { emailPath, samplePath } from "./api";

describe("emailPath", () => {
  it("builds an origin-relative path", () => {
    const path = emailPath("2007-07/msg_001.txt", "perspectives");
    expect(path).toBe("api/emails/2007-07/msg_001.txt/perspectives");
    expect(path.startsWith("/")).toBe(false);
    expect(path).not.toMatch(/^https?:/);
  });

  it("keeps directory separators but encodes everything else", () => {
    expect(emailPath("2007-07/odd name?.txt", "labels")).toBe(
      "api/emails/2007-07/odd%20name%3F.txt/labels",
    );
  });
});

describe("samplePath", () => {
  it("is origin-relative and always pages at 500", () => {
    const path = samplePath();
    expect(path).toBe("api/sample?page_size=500");
  });

  it("carries filters as query parameters", () => {
    const path = samplePath({ labeled: false, stratum: "2007|0.8-1.0|2", page: 2 });
    expect(path.startsWith("api/sample?")).toBe(true);
    const query = new URLSearchParams(path.split("?")[1]);
    expect(query.get("labeled")).toBe("false");
    expect(query.get("stratum")).toBe("2007|0.8-1.0|2");
    expect(query.get("page")).toBe("2");
    expect(query.get("page_size")).toBe("500");
  });
});
