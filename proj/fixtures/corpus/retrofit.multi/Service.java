package multi;

import retrofit2.http.DELETE;
import retrofit2.http.GET;
import retrofit2.http.Header;
import retrofit2.http.POST;
import retrofit2.http.Path;
import retrofit2.http.Query;

interface Service {
    @GET("users/{id}")
    Object user(@Path("id") String id);

    @POST("users/new")
    Object create(@Header("Authorization") String auth);

    @GET("search?type=repo")
    Object search(@Query("q") String q);

    @DELETE("users/{id}/sessions")
    Object endSessions(@Path("id") String id);
}
