import { isPerspectives, isSamplePage } from "./schema.js";
import type { Labels, Perspectives, SamplePage } from "./types.js";

export class SchemaError extends Error {}
export class HttpError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

/** All paths are origin-relative: the UI can only ever talk to the review
 * service that served it. */
export function emailPath(id: string, tail: string): string {
  const encoded = id.split("/").map(encodeURIComponent).join("/");
  return `api/emails/${encoded}/${tail}`;
}

export function samplePath(params: { labeled?: boolean; stratum?: string; page?: number } = {}): string {
  const query = new URLSearchParams();
  if (params.labeled !== undefined) query.set("labeled", String(params.labeled));
  if (params.stratum) query.set("stratum", params.stratum);
  if (params.page) query.set("page", String(params.page));
  query.set("page_size", "500");
  return `api/sample?${query.toString()}`;
}

async function getJson(path: string): Promise<unknown> {
  const resp = await fetch(path);
  if (!resp.ok) throw new HttpError(resp.status, await resp.text());
  return resp.json();
}

export async function fetchSample(params?: Parameters<typeof samplePath>[0]): Promise<SamplePage> {
  const data = await getJson(samplePath(params));
  if (!isSamplePage(data)) throw new SchemaError("sample payload mismatch");
  return data;
}

export async function fetchPerspectives(id: string): Promise<Perspectives> {
  const data = await getJson(emailPath(id, "perspectives"));
  if (!isPerspectives(data)) throw new SchemaError("perspectives payload mismatch");
  return data;
}

export async function postLabel(id: string, label: Labels): Promise<void> {
  const resp = await fetch(emailPath(id, "labels"), {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(label),
  });
  if (!resp.ok) throw new HttpError(resp.status, await resp.text());
}
