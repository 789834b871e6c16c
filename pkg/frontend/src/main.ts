// Browser entry point: same-origin API, app handle exposed for debugging.

import { App, initApp } from "./app.js";

declare global {
  interface Window {
    splitterlabApp?: App;
  }
}

window.splitterlabApp = initApp(document, "");
