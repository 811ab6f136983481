import { isPerspectives, isSamplePage } from "./schema.js";
export class SchemaError extends Error {
}
export class HttpError extends Error {
    constructor(status, detail) {
        super(detail);
        this.status = status;
    }
}
/** All paths are origin-relative: the UI can only ever talk to the review
 * service that served it. */
export function emailPath(id, tail) {
    const encoded = id.split("/").map(encodeURIComponent).join("/");
    return `api/emails/${encoded}/${tail}`;
}
export function samplePath(params = {}) {
    const query = new URLSearchParams();
    if (params.labeled !== undefined)
        query.set("labeled", String(params.labeled));
    if (params.stratum)
        query.set("stratum", params.stratum);
    if (params.page)
        query.set("page", String(params.page));
    query.set("page_size", "500");
    return `api/sample?${query.toString()}`;
}
async function getJson(path) {
    const resp = await fetch(path);
    if (!resp.ok)
        throw new HttpError(resp.status, await resp.text());
    return resp.json();
}
export async function fetchSample(params) {
    const data = await getJson(samplePath(params));
    if (!isSamplePage(data))
        throw new SchemaError("sample payload mismatch");
    return data;
}
export async function fetchPerspectives(id) {
    const data = await getJson(emailPath(id, "perspectives"));
    if (!isPerspectives(data))
        throw new SchemaError("perspectives payload mismatch");
    return data;
}
export async function postLabel(id, label) {
    const resp = await fetch(emailPath(id, "labels"), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(label),
    });
    if (!resp.ok)
        throw new HttpError(resp.status, await resp.text());
}
