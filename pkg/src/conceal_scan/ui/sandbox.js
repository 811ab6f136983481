/** Wrap email HTML for the rendered pane: scripts can never run (empty
 * iframe sandbox attribute) and a CSP meta tag blocks every network fetch,
 * so nothing escapes the origin even if the HTML references remote assets. */
export function sandboxedDocument(html) {
    const csp = "<meta http-equiv=\"Content-Security-Policy\" " +
        "content=\"default-src 'none'; style-src 'unsafe-inline'; img-src data:\">";
    return `<!DOCTYPE html><html><head>${csp}</head><body>${html}</body></html>`;
}
export const IFRAME_SANDBOX_FLAGS = "";
