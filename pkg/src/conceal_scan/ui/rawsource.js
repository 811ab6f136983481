/** Split the raw source into plain and span-owned slices so the source pane
 * can anchor each concealed span for scroll-to navigation.
 *
 * Spans are located by first occurrence of their text at or after the end
 * of the previous span (spans arrive in document order). A span whose text
 * cannot be found (e.g. encoded differently in the transport form) simply
 * contributes no anchor.
 */
export function rawSourceSegments(raw, spans) {
    const segments = [];
    let cursor = 0;
    spans.forEach((span, index) => {
        const needle = span.raw_text.trim();
        if (!needle)
            return;
        const at = raw.indexOf(needle, cursor);
        if (at === -1)
            return;
        if (at > cursor)
            segments.push({ text: raw.slice(cursor, at), spanIndex: null });
        segments.push({ text: needle, spanIndex: index });
        cursor = at + needle.length;
    });
    if (cursor < raw.length)
        segments.push({ text: raw.slice(cursor), spanIndex: null });
    return segments;
}
/** Map a filter-pane token to the span that conceals it, for click-to-scroll.
 * Matches on token membership in the span's text, case-insensitively. */
export function spanIndexForToken(token, spans) {
    const lower = token.toLowerCase();
    for (let i = 0; i < spans.length; i++) {
        const words = spans[i].raw_text.toLowerCase();
        if (words.includes(lower))
            return i;
    }
    return null;
}
