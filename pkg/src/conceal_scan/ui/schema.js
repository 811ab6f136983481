function isStringArray(x) {
    return Array.isArray(x) && x.every((v) => typeof v === "string");
}
function isLabels(x) {
    if (typeof x !== "object" || x === null)
        return false;
    const l = x;
    return (typeof l.has_concealment === "boolean" &&
        isStringArray(l.subtypes) &&
        isStringArray(l.tricks));
}
/** Strict enough that a partial render is impossible: every pane's data
 * must be present and well-typed before anything is drawn. */
export function isPerspectives(x) {
    if (typeof x !== "object" || x === null)
        return false;
    const p = x;
    return (typeof p.id === "string" &&
        typeof p.raw_source === "string" &&
        typeof p.normalized_html === "string" &&
        isStringArray(p.mail_filter_tokens) &&
        isStringArray(p.recipient_tokens) &&
        Array.isArray(p.token_diff) &&
        p.token_diff.every((op) => Array.isArray(op) &&
            op.length === 5 &&
            typeof op[0] === "string" &&
            op.slice(1).every((n) => typeof n === "number")) &&
        Array.isArray(p.spans) &&
        p.spans.every((s) => typeof s === "object" &&
            s !== null &&
            typeof s.raw_text === "string" &&
            typeof s.dom_path === "string") &&
        isLabels(p.auto_labels) &&
        (p.human_labels === null || isLabels(p.human_labels)));
}
export function isSamplePage(x) {
    if (typeof x !== "object" || x === null)
        return false;
    const p = x;
    return (Array.isArray(p.items) &&
        typeof p.page === "number" &&
        typeof p.pages === "number" &&
        typeof p.total === "number" &&
        p.items.every((i) => typeof i === "object" &&
            i !== null &&
            typeof i.id === "string" &&
            typeof i.labeled === "boolean"));
}
